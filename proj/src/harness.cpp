#include "jamsim/harness.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "jamsim/defense_imitation.hpp"
#include "jamsim/defense_orthogonal.hpp"
#include "jamsim/defense_pid.hpp"
#include "jamsim/detector.hpp"

namespace jamsim {

std::vector<int> shuffled_permutation(int n, RngStream& rng) {
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
  return perm;
}

namespace {

struct ScenarioTraits {
  bool attacker = false;
  bool pid = false;
  bool imitation = false;    // imitation attacker trains from slot 0
  bool orthogonal = false;
  bool detector = false;
  bool env_change = false;
};

ScenarioTraits traits_for(Scenario s) {
  switch (s) {
    case Scenario::no_attack:
      return {};
    case Scenario::sra_attack:
    case Scenario::budgeted_attack:
      return {.attacker = true};
    case Scenario::defense_pid:
      return {.attacker = true, .pid = true};
    case Scenario::defense_imitation:
      return {.attacker = true, .imitation = true};
    case Scenario::defense_orthogonal:
      return {.attacker = true, .orthogonal = true};
    case Scenario::detect_env_change:
      return {.imitation = true, .orthogonal = true, .detector = true, .env_change = true};
    case Scenario::detect_attack:
      return {.attacker = true, .imitation = true, .orthogonal = true, .detector = true};
  }
  throw std::invalid_argument("invalid scenario");
}

int argmax_index(const Eigen::VectorXd& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace

MetricsLog run_scenario(const ExperimentConfig& cfg_in, const Checkpoints& ckpts) {
  ExperimentConfig cfg = cfg_in;
  validate_config(cfg);
  const ScenarioTraits traits = traits_for(cfg.scenario);
  if (cfg.scenario == Scenario::budgeted_attack) cfg.attacker.budget.enabled = true;

  if (!ckpts.victim) throw std::runtime_error("run_scenario: missing victim checkpoint");
  if (traits.attacker && !ckpts.attacker)
    throw std::runtime_error("run_scenario: missing attacker checkpoint");
  if (traits.orthogonal && (!ckpts.policy1 || !ckpts.policy2))
    throw std::runtime_error("run_scenario: missing orthogonal policy checkpoints");

  const std::uint64_t master = cfg.run.seed;
  ChannelEnv env = make_env(cfg.env, derive_seed(master, "env"));

  VictimConfig vcfg = cfg.victim;
  vcfg.n_channels = cfg.env.n_channels;
  vcfg.accuracy_capacity = std::max(vcfg.accuracy_capacity, cfg.run.moving_average_window);
  Victim victim(vcfg, derive_seed(master, "victim"));
  victim.restore(*ckpts.victim);
  const ParameterBlob victim_home = *ckpts.victim;

  std::optional<Attacker> attacker;
  if (traits.attacker) {
    AttackerConfig acfg = cfg.attacker;
    acfg.n_channels = cfg.env.n_channels;
    attacker.emplace(acfg, derive_seed(master, "attacker"));
    attacker->restore(*ckpts.attacker);
    attacker->capture_initial_policy();
  }

  std::optional<ImitationAttacker> imitation;
  if (traits.imitation) {
    ImitationConfig icfg = cfg.imitation;
    icfg.n_channels = cfg.env.n_channels;
    imitation.emplace(icfg, derive_seed(master, "imitation"));
  }

  RngStream defense_rng(derive_seed(master, "defense"));
  RngStream shuffle_rng(derive_seed(master, "env.shuffle"));

  AccuracyHistory pid_history(std::max(cfg.pid.diff_window, 400));

  // Defense engagement state.
  bool pid_active = false;
  bool imitation_rule_active = false;
  int active_policy = -1;  // orthogonal policy id once engaged
  long defense_clock = 0;

  // Detector probe state.
  std::vector<double> probe_trace;
  bool probe_running = false;
  long probe_end = 0;
  int probe_extensions = 0;
  bool verdict_recorded = false;

  MetricsLog log;
  log.meta()["scenario"] = to_string(cfg.scenario);
  log.meta()["seed"] = std::to_string(master);
  log.meta()["horizon"] = std::to_string(cfg.run.horizon);
  log.meta()["attack_start"] = std::to_string(cfg.schedule.attack_start);
  log.meta()["defense_start"] = std::to_string(cfg.schedule.defense_start);
  log.meta()["partial_reward"] = cfg.victim.partial_reward ? "1" : "0";

  const int ma_window = cfg.run.moving_average_window;

  for (long slot = 0; slot < cfg.run.horizon; ++slot) {
    // -- scheduled events --------------------------------------------------
    if (traits.env_change && slot == cfg.schedule.attack_start) {
      const auto perm = shuffled_permutation(cfg.env.n_channels, shuffle_rng);
      env.set_permutation(perm);
      log.meta()["env_change_slot"] = std::to_string(slot);
    }
    if (attacker && slot == cfg.schedule.attack_start) attacker->begin_attack();
    if (slot == cfg.schedule.defense_start && (traits.pid || traits.imitation || traits.orthogonal)) {
      victim.set_epsilon(cfg.defense_epsilon);
      if (traits.pid) pid_active = true;
      if (traits.orthogonal) {
        active_policy = 0;
        victim.restore(*ckpts.policy1);
        defense_clock = 0;
        if (traits.detector) {
          probe_running = true;
          probe_end = slot + cfg.detector.probe_duration;
        }
      } else if (traits.imitation) {
        imitation_rule_active = true;
      }
    }

    // -- slot dynamics -----------------------------------------------------
    env.advance();

    int a_imitation = -1;
    if (imitation) a_imitation = imitation->predict();

    int a_victim;
    if (pid_active) {
      const Eigen::VectorXd& scores = victim.policy_scores();
      const auto ranked = rank_channels({scores.data(), static_cast<size_t>(scores.size())});
      const Eigen::VectorXd probs = pid_probabilities(cfg.pid, pid_history);
      a_victim = diversified_select(ranked, {probs.data(), static_cast<size_t>(probs.size())},
                                    defense_rng);
    } else if (imitation_rule_active) {
      const Eigen::VectorXd& scores = victim.policy_scores();
      const auto ranked = rank_channels({scores.data(), static_cast<size_t>(scores.size())});
      a_victim = imitation_select_rule(ranked, a_imitation, cfg.imitation.probs, defense_rng);
    } else {
      a_victim = victim.select_action();
    }

    std::optional<int> jam;
    int a_attacker = -1;
    std::uint8_t phase_at_commit = 0;
    if (attacker) {
      jam = attacker->commit();
      a_attacker = attacker->last_action();
      phase_at_commit = static_cast<std::uint8_t>(attacker->phase());
    }

    const TransmissionOutcome outcome = env.transmit(a_victim, jam);
    const VictimStepResult vres = victim.learn(a_victim, outcome);

    double r_attacker = 0.0;
    if (attacker) r_attacker = attacker->feedback(a_victim, outcome.was_good_pre_jam);
    if (imitation) {
      std::optional<bool> oracle;
      if (imitation->variant() != ImitationRewardVariant::match) oracle = outcome.was_good_pre_jam;
      imitation->observe(a_victim, oracle);
    }
    if (traits.pid) pid_history.append(outcome.success());

    SlotRecord rec;
    rec.slot = static_cast<std::uint64_t>(slot);
    rec.victim_action = a_victim;
    rec.attacker_action = a_attacker;
    rec.jam_channel = jam.value_or(-1);
    rec.imitation_action = a_imitation;
    rec.victim_reward = vres.reward;
    rec.attacker_reward = r_attacker;
    rec.success = outcome.success();
    rec.pre_jam_good = outcome.was_good_pre_jam;
    rec.active_policy = active_policy;
    rec.attacker_phase = phase_at_commit;
    log.append(rec);

    // -- end-of-slot scheduler ticks ----------------------------------------
    if (active_policy >= 0) {
      ++defense_clock;
      const int next =
          switch_defense_tick(active_policy, victim.accuracy(ma_window), defense_clock, cfg.ortho);
      if (next != active_policy) {
        active_policy = next;
        victim.restore(next == 0 ? *ckpts.policy1 : *ckpts.policy2);
      }
    }

    if (probe_running) {
      probe_trace.push_back(victim.accuracy(ma_window));
      if (slot + 1 >= probe_end &&
          probe_trace.size() >= static_cast<size_t>(cfg.detector.probe_duration)) {
        const std::span<const double> window{
            probe_trace.data() + probe_trace.size() - cfg.detector.probe_duration,
            static_cast<size_t>(cfg.detector.probe_duration)};
        const Verdict verdict = detect(window, cfg.detector);
        const ResponsePlan plan = respond(verdict);
        if (plan == ResponsePlan::ExtendProbe && probe_extensions == 0) {
          ++probe_extensions;
          probe_end += cfg.detector.probe_duration;
        } else {
          probe_running = false;
          verdict_recorded = true;
          log.meta()["detector.decision"] = to_string(verdict);
          log.meta()["detector.slot"] = std::to_string(slot);
          log.meta()["detector.extended"] = std::to_string(probe_extensions);
          active_policy = -1;
          victim.restore(victim_home);
          if (plan == ResponsePlan::EngageImitationDefense) {
            imitation_rule_active = true;
            victim.set_epsilon(cfg.defense_epsilon);
          } else {
            // Environment change (or an unresolved probe): drop defenses and
            // let the agent retrain with its usual exploration.
            victim.set_epsilon(cfg.victim.epsilon);
          }
        }
      }
    }
  }

  if (traits.detector && !verdict_recorded) log.meta()["detector.decision"] = "none";
  return log;
}

ParameterBlob train_victim(const ExperimentConfig& cfg, std::uint64_t seed, long slots,
                           std::ostream* progress) {
  ChannelEnv env = make_env(cfg.env, derive_seed(seed, "pretrain.env"));
  VictimConfig vcfg = cfg.victim;
  vcfg.n_channels = cfg.env.n_channels;
  vcfg.epsilon = cfg.pretrain.victim_train_epsilon;
  Victim victim(vcfg, derive_seed(seed, "pretrain.victim"));
  for (long t = 0; t < slots; ++t) {
    victim_step(victim, env, std::nullopt);
    if (progress && (t + 1) % 25000 == 0)
      *progress << "train-victim slot " << (t + 1) << " accuracy "
                << victim.accuracy(std::min<long>(t + 1, 1000)) << '\n';
  }
  return victim.snapshot();
}

ParameterBlob train_attacker(const ExperimentConfig& cfg, const ParameterBlob& victim_blob,
                             std::uint64_t seed, long slots, std::ostream* progress) {
  ChannelEnv env = make_env(cfg.env, derive_seed(seed, "pretrain2.env"));
  VictimConfig vcfg = cfg.victim;
  vcfg.n_channels = cfg.env.n_channels;
  Victim victim(vcfg, derive_seed(seed, "pretrain2.victim"));
  victim.restore(victim_blob);

  AttackerConfig acfg = cfg.attacker;
  acfg.n_channels = cfg.env.n_channels;
  Attacker attacker(acfg, derive_seed(seed, "pretrain.attacker"));

  SuccessWindow match_rate(1000);
  for (long t = 0; t < slots; ++t) {
    env.advance();
    const int a_victim = victim.select_action();
    attacker.commit();  // listening mode: never jams
    const TransmissionOutcome outcome = env.transmit(a_victim, std::nullopt);
    victim.learn(a_victim, outcome);
    attacker.feedback(a_victim, outcome.was_good_pre_jam);
    match_rate.append(attacker.last_action() == a_victim);
    if (progress && (t + 1) % 25000 == 0)
      *progress << "train-attacker slot " << (t + 1) << " match-rate "
                << match_rate.accuracy(1000) << '\n';
  }
  attacker.capture_initial_policy();
  return attacker.snapshot();
}

}  // namespace jamsim
