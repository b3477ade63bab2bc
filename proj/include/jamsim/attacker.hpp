#pragma once

#include <optional>
#include <span>
#include <vector>

#include "jamsim/actor_critic.hpp"
#include "jamsim/observation.hpp"
#include "jamsim/success_window.hpp"

namespace jamsim {

// Four-case jamming reward: matching the victim pays off, more so on a good
// channel; missing costs, more so when the victim found a good channel.
double attacker_reward(int attacker_action, int victim_action, bool victim_good);

struct SraConfig {
  int cycle_length = 2000;
  int retrain_length = 200;
  double freeze_threshold = 0.30;
  int accuracy_window = 100;  // span of the attacker's own victim-accuracy estimate
};

struct BudgetConfig {
  bool enabled = false;
  double theta = 0.3;    // budgeted fraction of jammed slots per period
  double theta_u = 0.3;  // quantile used for the threshold update
  int period = 1000;     // T
};

enum class AttackerPhase : std::uint8_t { listen = 1, attack = 2, frozen_attack = 3, retrain = 4 };

/// Jamming-power governor: permits an attack only while the policy's peak
/// score exceeds a per-period threshold and the period's jam quota remains.
class BudgetState {
 public:
  explicit BudgetState(const BudgetConfig& cfg);

  // Attacking-phase tick: records the peak score and decides (and counts)
  // whether a jam may be emitted this slot.
  bool tick(std::span<const double> scores);

  // Non-attacking tick: records the peak score only, so the threshold keeps
  // tracking the score distribution between attack phases.
  void observe(std::span<const double> scores);

  int max_attacks_per_period() const;
  int attacks_this_period() const { return attacks_this_period_; }
  double threshold() const { return p_theta_; }

 private:
  void record(double p_max);

  BudgetConfig cfg_;
  double p_theta_ = 0.0;
  int attacks_this_period_ = 0;
  std::vector<double> recorded_;  // peak scores of the running period
};

struct AttackerConfig {
  int n_channels = 16;
  int memory_depth = 16;  // T_mem
  double epsilon = 0.1;
  AgentConfig agent;
  SraConfig sra;
  BudgetConfig budget;
};

/// DRL jammer: observes its own hit/miss feedback, jams one channel per slot
/// in attacking phases, and runs the stop-retrain-attack schedule.
class Attacker {
 public:
  Attacker(const AttackerConfig& cfg, std::uint64_t seed);

  // Remembers the current parameters as the policy reloaded at each retrain.
  void capture_initial_policy();

  // Enters the first attack phase (call once, at the scheduled attack slot).
  void begin_attack();

  // Commits this slot's channel choice before the victim's move is known.
  // Returns the jammed channel if a jam is emitted.
  std::optional<int> commit();

  // Consumes the slot outcome (oracle view of the victim), updates memory,
  // learns if enabled, and advances the SRA schedule. Returns the reward.
  double feedback(int victim_action, bool victim_good);

  AttackerPhase phase() const { return phase_; }
  bool learning_enabled() const { return learning_enabled_; }
  bool jamming_phase() const {
    return phase_ == AttackerPhase::attack || phase_ == AttackerPhase::frozen_attack;
  }
  int last_action() const { return pending_action_; }
  std::optional<int> last_jam() const { return last_jam_; }
  double victim_accuracy_estimate() const;
  const BudgetState& budget() const { return budget_; }
  double epsilon() const { return cfg_.epsilon; }

  ParameterBlob snapshot() const { return agent_.snapshot(); }
  void restore(const ParameterBlob& blob) { agent_.restore(blob); }
  ActorCriticAgent& agent() { return agent_; }
  const ObservationMatrix& memory() const { return memory_; }

 private:
  void sra_tick(double victim_accuracy);
  void enter_retrain();

  AttackerConfig cfg_;
  ActorCriticAgent agent_;
  ObservationMatrix memory_, prev_memory_;
  AttackerPhase phase_ = AttackerPhase::listen;
  bool learning_enabled_ = true;
  bool attack_begun_ = false;
  ParameterBlob initial_policy_;
  long cycle_clock_ = 0;
  long retrain_clock_ = 0;
  BudgetState budget_;
  SuccessWindow victim_estimate_;
  int pending_action_ = -1;
  std::optional<int> last_jam_;
};

}  // namespace jamsim
