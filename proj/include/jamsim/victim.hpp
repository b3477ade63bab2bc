#pragma once

#include <optional>
#include <span>
#include <vector>

#include "jamsim/actor_critic.hpp"
#include "jamsim/channel_env.hpp"
#include "jamsim/observation.hpp"
#include "jamsim/success_window.hpp"

namespace jamsim {

struct VictimConfig {
  int n_channels = 16;   // N
  int memory_depth = 16;  // M
  double epsilon = 0.1;
  // When set, a jammed-but-good channel earns +0.5 instead of -1 (the PID
  // defense variant's extra feedback).
  bool partial_reward = false;
  AgentConfig agent;
  int accuracy_capacity = 4096;
};

struct VictimStepResult {
  int action;
  double reward;
  bool success;
};

// Channel indices ordered by descending score; equal scores keep index order.
std::vector<int> rank_channels(std::span<const double> scores);

double victim_reward(const TransmissionOutcome& outcome, bool partial_reward);

/// Dynamic channel-access user: keeps the NxM feedback memory, picks one
/// channel per slot, learns online from +-1 rewards.
class Victim {
 public:
  Victim(const VictimConfig& cfg, std::uint64_t seed);

  // Policy scores on the current memory; valid until the next call.
  const Eigen::VectorXd& policy_scores();

  // Epsilon-greedy choice on the current memory (defenses pick differently
  // and pass their choice to learn()).
  int select_action();

  // Consumes the slot outcome for `action`: computes the reward, rolls the
  // memory, and applies the TD update (unless learning is disabled).
  VictimStepResult learn(int action, const TransmissionOutcome& outcome);

  double accuracy(int window) const { return history_.accuracy(window); }
  size_t recorded_slots() const { return history_.recorded(); }

  double epsilon() const { return epsilon_; }
  void set_epsilon(double e) { epsilon_ = e; }
  bool partial_reward() const { return partial_reward_; }
  void set_partial_reward(bool on) { partial_reward_ = on; }
  void set_learning_enabled(bool on) { learning_enabled_ = on; }
  bool learning_enabled() const { return learning_enabled_; }

  ParameterBlob snapshot() const { return agent_.snapshot(); }
  void restore(const ParameterBlob& blob) { agent_.restore(blob); }

  ActorCriticAgent& agent() { return agent_; }
  const ObservationMatrix& memory() const { return memory_; }
  int n_channels() const { return cfg_.n_channels; }

 private:
  VictimConfig cfg_;
  double epsilon_;
  bool partial_reward_;
  bool learning_enabled_ = true;
  ActorCriticAgent agent_;
  ObservationMatrix memory_, prev_memory_;
  SuccessWindow history_;
};

// One full undefended slot: select, transmit, learn.
VictimStepResult victim_step(Victim& v, ChannelEnv& env, std::optional<int> jammed);

}  // namespace jamsim
