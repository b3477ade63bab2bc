#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jamsim/attacker.hpp"
#include "jamsim/channel_env.hpp"
#include "jamsim/defense_imitation.hpp"
#include "jamsim/defense_orthogonal.hpp"
#include "jamsim/defense_pid.hpp"
#include "jamsim/detector.hpp"
#include "jamsim/victim.hpp"

namespace jamsim {

enum class Scenario {
  no_attack,
  sra_attack,
  budgeted_attack,
  defense_pid,
  defense_imitation,
  defense_orthogonal,
  detect_env_change,
  detect_attack,
};

Scenario scenario_from_string(const std::string& name);  // throws on unknown names
const char* to_string(Scenario s);

struct EnvConfig {
  int n_channels = 16;
  int n_good = 2;
  double switch_prob = 0.95;
  std::string mapping = "adjacent";
  std::optional<std::vector<int>> permutation;
};

ChannelEnv make_env(const EnvConfig& cfg, std::uint64_t seed);

struct ScheduleConfig {
  long attack_start = 2000;
  long defense_start = 2400;
};

struct RunConfig {
  long horizon = 60000;
  std::uint64_t seed = 1;
  int moving_average_window = 200;
  int pdf_bins = 50;
};

struct PretrainConfig {
  long victim_slots = 500000;
  long attacker_slots = 200000;
  double victim_train_epsilon = 0.1;
};

struct CheckpointPaths {
  std::string victim;
  std::string attacker;
  std::string policy1;
  std::string policy2;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::no_attack;
  EnvConfig env;
  VictimConfig victim;
  AttackerConfig attacker;
  ImitationConfig imitation;
  PidGains pid;
  OrthoConfig ortho;
  DetectorConfig detector;
  ScheduleConfig schedule;
  RunConfig run;
  PretrainConfig pretrain;
  CheckpointPaths checkpoints;
  double defense_epsilon = 0.0;  // victim exploration while a defense runs
};

// All spec defaults, including the PID gain and imitation probability arrays.
ExperimentConfig default_config();

// Defaults overlaid with the JSON content; unknown keys are ignored.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

ExperimentConfig load_config_file(const std::filesystem::path& path);
void save_config_file(const ExperimentConfig& cfg, const std::filesystem::path& path);

// Validates cross-field invariants (schedule ordering, probability arrays).
void validate_config(const ExperimentConfig& cfg);

}  // namespace jamsim
