#pragma once

#include <optional>
#include <ostream>

#include "jamsim/actor_critic.hpp"
#include "jamsim/config.hpp"
#include "jamsim/metrics.hpp"

namespace jamsim {

struct Checkpoints {
  std::optional<ParameterBlob> victim;
  std::optional<ParameterBlob> attacker;
  std::optional<ParameterBlob> policy1;
  std::optional<ParameterBlob> policy2;
};

// Executes the configured scenario slot by slot and returns the full log.
// Slot order: scheduled events, environment advance, simultaneous action
// commitment (victim and attacker), transmit resolution, reward dispatch and
// learning updates, scheduler ticks (SRA / budget / defense / detector).
// Identical (config, seed) produce identical logs. Throws on missing
// checkpoints required by the scenario.
MetricsLog run_scenario(const ExperimentConfig& cfg, const Checkpoints& ckpts);

// Trains a fresh victim alone on the configured channel pattern.
ParameterBlob train_victim(const ExperimentConfig& cfg, std::uint64_t seed, long slots,
                           std::ostream* progress = nullptr);

// Trains a fresh attacker in listening mode against a trained victim.
ParameterBlob train_attacker(const ExperimentConfig& cfg, const ParameterBlob& victim_blob,
                             std::uint64_t seed, long slots, std::ostream* progress = nullptr);

std::vector<int> shuffled_permutation(int n, RngStream& rng);

}  // namespace jamsim
