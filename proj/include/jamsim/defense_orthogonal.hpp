#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "jamsim/actor_critic.hpp"
#include "jamsim/channel_env.hpp"
#include "jamsim/rng.hpp"
#include "jamsim/victim.hpp"

namespace jamsim {

/// Per-lag counts of successful action transitions: matrices[tau-1](a1, a2)
/// counts slot pairs (t-tau, t) where both actions earned a positive reward.
class TransitionMatrixSet {
 public:
  TransitionMatrixSet(int n_actions, int order_max);

  // Scans lags 1..order_max ending at index t of the logs.
  void record(std::span<const int> actions, std::span<const double> rewards, size_t t);
  // Replays a whole log.
  void record_all(std::span<const int> actions, std::span<const double> rewards);

  const Eigen::MatrixXd& matrix(int tau) const;  // tau in [1, order_max]
  double total(int tau) const;
  int order_max() const { return order_max_; }
  int n_actions() const { return n_; }
  void clear();

 private:
  int n_;
  int order_max_;
  std::vector<Eigen::MatrixXd> mats_;  // integer counts held exactly in doubles
};

// Hadamard overlap of two same-order matrices divided by the product of their
// totals. nullopt when either matrix has no observations.
std::optional<double> normalized_correlation(const TransitionMatrixSet& a,
                                             const TransitionMatrixSet& b, int tau);

struct OrthoConfig {
  int order_max = 5;          // T
  double decay = 0.6;         // rho
  double reg_weight = 0.3;    // beta
  double explore_eps = 0.9;   // exploration probability while training a policy
  int explore_period = 5000;  // slots of guided training per turn
  int listen_period = 2000;   // slots of observation per turn
  int max_iterations = 20;    // alternations before giving up
  int corr_orders = 3;        // lags checked by the stopping rule
  double correlation_target_ratio = 0.1;  // target relative to self-correlation
  double lr_boost = 3.0;                  // actor learning-rate multiplier while training
  double switch_threshold = 0.40;
  int switch_period = 2000;
};

// Guided exploration distribution for the policy currently in training:
// ranks channels by how rarely the *other* policy transitioned into them
// after the recent actions, discounted by lag and signed by the recent
// rewards, plus the success-count regularizer. recent_actions/rewards are
// ordered newest-first (index i corresponds to lag tau = i+1). `reg` is the
// other policy's normalized per-action success counts (zero vector disables
// the regularizer).
Eigen::VectorXd exploration_distribution(const TransitionMatrixSet& other_policy,
                                         std::span<const int> recent_actions,
                                         std::span<const double> recent_rewards,
                                         const Eigen::VectorXd& reg, const OrthoConfig& cfg);

struct OrthoIterationStats {
  std::vector<double> correlation;       // corr(pi1, pi2, tau) for tau=1..corr_orders
  std::vector<double> self_correlation;  // corr of policy 1 against itself on split data
  double accuracy1 = 0.0;
  double accuracy2 = 0.0;
};

struct OrthoTrainReport {
  std::vector<OrthoIterationStats> iterations;
  bool converged = false;
  int chosen_iteration = -1;
};

struct OrthoPair {
  ParameterBlob policy1;
  ParameterBlob policy2;
  OrthoTrainReport report;
};

// Alternating guided-exploration training of two copies of the victim policy
// until their transition matrices decorrelate (or max_iterations is hit, in
// which case the best-seen pair is returned with report.converged = false).
OrthoPair train_orthogonal_pair(const ParameterBlob& victim_blob, const VictimConfig& victim_cfg,
                                const ChannelEnv& env_template, const OrthoConfig& cfg,
                                std::uint64_t seed);

void write_ortho_report(const OrthoTrainReport& report, const std::filesystem::path& path);

// Boundary-only policy switch: every switch_period slots, swap when the
// accuracy sits below the threshold. `clock` counts slots since the defense
// engaged; returns the policy id to use next slot.
int switch_defense_tick(int current_policy, double accuracy, long clock, const OrthoConfig& cfg);

}  // namespace jamsim
