#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "jamsim/config.hpp"

using jamsim::config_from_json;
using jamsim::default_config;
using jamsim::ExperimentConfig;
using jamsim::Scenario;
using nlohmann::json;

TEST_CASE("defaults carry the documented values") {
  const ExperimentConfig cfg = default_config();
  CHECK(cfg.env.n_channels == 16);
  CHECK(cfg.env.n_good == 2);
  CHECK(cfg.env.switch_prob == 0.95);
  CHECK(cfg.victim.memory_depth == 16);
  CHECK(cfg.victim.epsilon == 0.1);
  CHECK(cfg.victim.agent.discount == 0.9);
  CHECK(cfg.attacker.sra.cycle_length == 2000);
  CHECK(cfg.attacker.sra.retrain_length == 200);
  CHECK(cfg.attacker.sra.freeze_threshold == 0.30);
  CHECK(cfg.attacker.budget.theta == 0.3);
  CHECK(cfg.attacker.budget.period == 1000);
  CHECK(cfg.schedule.attack_start == 2000);
  CHECK(cfg.schedule.defense_start == 2400);
  CHECK(cfg.detector.probe_duration == 8000);
  CHECK(cfg.detector.recovery_floor == 0.20);
  CHECK(cfg.detector.collapse_ceiling == 0.05);
  CHECK(cfg.ortho.switch_threshold == 0.40);
  CHECK(cfg.ortho.switch_period == 2000);
  CHECK(cfg.pretrain.victim_slots == 500000);
  CHECK(cfg.pretrain.attacker_slots == 200000);
  CHECK_NOTHROW(jamsim::validate_config(cfg));
}

TEST_CASE("json round-trip preserves the configuration") {
  ExperimentConfig cfg = default_config();
  cfg.scenario = Scenario::budgeted_attack;
  cfg.run.seed = 99;
  cfg.victim.agent.actor_lr = 5e-4;
  const json j = jamsim::config_to_json(cfg);
  const ExperimentConfig back = config_from_json(j);
  CHECK(back.scenario == Scenario::budgeted_attack);
  CHECK(back.run.seed == 99);
  CHECK(back.victim.agent.actor_lr == 5e-4);
  CHECK(back.pid.base_probs == cfg.pid.base_probs);
  CHECK(back.imitation.probs == cfg.imitation.probs);
}

TEST_CASE("partial overrides keep the remaining defaults") {
  const json j = {{"scenario", "sra_attack"},
                  {"run", {{"horizon", 12345}}},
                  {"victim", {{"epsilon", 0.0}}}};
  const ExperimentConfig cfg = config_from_json(j);
  CHECK(cfg.scenario == Scenario::sra_attack);
  CHECK(cfg.run.horizon == 12345);
  CHECK(cfg.victim.epsilon == 0.0);
  CHECK(cfg.env.n_channels == 16);
  CHECK(cfg.attacker.sra.cycle_length == 2000);
}

TEST_CASE("pid scenario turns the partial reward on unless overridden") {
  CHECK(config_from_json({{"scenario", "defense_pid"}}).victim.partial_reward);
  CHECK_FALSE(config_from_json({{"scenario", "defense_pid"},
                                {"victim", {{"partial_reward", false}}}})
                  .victim.partial_reward);
  CHECK_FALSE(config_from_json({{"scenario", "sra_attack"}}).victim.partial_reward);
}

TEST_CASE("unknown scenario names are rejected") {
  CHECK_THROWS_AS(config_from_json({{"scenario", "bogus"}}), std::invalid_argument);
}

TEST_CASE("schedule and probability invariants are enforced") {
  CHECK_THROWS_AS(config_from_json({{"schedule", {{"attack_start", 3000}}}}),
                  std::invalid_argument);  // attack after defense start
  CHECK_THROWS_AS(config_from_json({{"run", {{"horizon", 100}}}}), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json({{"imitation", {{"probs", {0.9, 0.1}}}}}),
                  std::invalid_argument);
}

TEST_CASE("config files round-trip") {
  const auto path = std::filesystem::temp_directory_path() / "jamsim_cfg_test.json";
  ExperimentConfig cfg = default_config();
  cfg.run.horizon = 7777;
  jamsim::save_config_file(cfg, path);
  const ExperimentConfig back = jamsim::load_config_file(path);
  CHECK(back.run.horizon == 7777);
  std::filesystem::remove(path);
}

TEST_CASE("channel-count overrides rescale dependent defaults") {
  const json j = {{"environment", {{"n_channels", 8}}}};
  const ExperimentConfig cfg = config_from_json(j);
  CHECK(cfg.pid.base_probs.size() == 8);
  CHECK(cfg.imitation.probs.size() == 8);
  CHECK(cfg.victim.n_channels == 8);
  CHECK_NOTHROW(jamsim::validate_config(cfg));
}
