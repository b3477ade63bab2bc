#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "jamsim/mlp.hpp"
#include "jamsim/observation.hpp"
#include "jamsim/rng.hpp"

namespace jamsim {

struct AgentConfig {
  std::vector<int> hidden{128, 64};
  double actor_lr = 1e-3;
  double critic_lr = 1e-3;
  double discount = 0.9;  // gamma
};

// Serialized agent parameters: format-version byte, then per network an
// architecture descriptor (layer sizes as little-endian 32-bit integers)
// followed by the flat parameter array as little-endian 64-bit floats.
using ParameterBlob = std::vector<std::uint8_t>;

inline constexpr std::uint8_t kBlobFormatVersion = 1;

struct ActResult {
  int action;
  Eigen::VectorXd scores;  // full softmax output, also when acting randomly
};

/// Online actor-critic learner over observation-matrix inputs: softmax policy
/// head over N actions, scalar value head, TD-error-driven updates.
class ActorCriticAgent {
 public:
  ActorCriticAgent(int n_actions, int input_size, const AgentConfig& cfg, std::uint64_t seed);

  // Epsilon-greedy action on the current policy. With probability epsilon a
  // uniformly random action is taken; otherwise the argmax of the softmax
  // scores (ties resolved to the lowest index). Scores are always returned.
  ActResult act(const ObservationMatrix& obs, double epsilon);

  // Softmax scores without drawing an action.
  const Eigen::VectorXd& policy_scores(const ObservationMatrix& obs);

  double value(const ObservationMatrix& obs);

  // delta = r + gamma * V(obs_next) - V(obs_t) under current parameters.
  double td_error(double reward, const ObservationMatrix& obs_t, const ObservationMatrix& obs_next);

  // One gradient-descent step on delta^2 w.r.t. the critic parameters, with
  // the bootstrap target held constant (semi-gradient).
  void update_critic(double delta, const ObservationMatrix& obs_t);

  // One ascent step along grad log pi(action | obs_t) * delta.
  void update_actor(double delta, const ObservationMatrix& obs_t, int action);

  ParameterBlob snapshot() const;
  void restore(const ParameterBlob& blob);

  int n_actions() const { return n_actions_; }
  int input_size() const { return actor_.input_size(); }
  double discount() const { return cfg_.discount; }
  double actor_lr() const { return cfg_.actor_lr; }
  double critic_lr() const { return cfg_.critic_lr; }
  void set_actor_lr(double lr) { cfg_.actor_lr = lr; }
  void set_critic_lr(double lr) { cfg_.critic_lr = lr; }

  Mlp& actor() { return actor_; }
  Mlp& critic() { return critic_; }

 private:
  void check_obs(const ObservationMatrix& obs) const;
  void softmax_from_logits(const Eigen::VectorXd& logits);

  int n_actions_;
  AgentConfig cfg_;
  Mlp actor_;
  Mlp critic_;
  RngStream explore_rng_;
  Eigen::VectorXd scores_, dlogits_, actor_grad_, critic_grad_;
  Eigen::VectorXd value_grad_seed_;
};

void save_blob(const ParameterBlob& blob, const std::filesystem::path& path);
ParameterBlob load_blob(const std::filesystem::path& path);

}  // namespace jamsim
