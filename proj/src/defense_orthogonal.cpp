#include "jamsim/defense_orthogonal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace jamsim {

TransitionMatrixSet::TransitionMatrixSet(int n_actions, int order_max)
    : n_(n_actions), order_max_(order_max) {
  if (n_ <= 0 || order_max_ <= 0)
    throw std::invalid_argument("TransitionMatrixSet: sizes must be positive");
  mats_.assign(static_cast<size_t>(order_max_), Eigen::MatrixXd::Zero(n_, n_));
}

void TransitionMatrixSet::record(std::span<const int> actions, std::span<const double> rewards,
                                 size_t t) {
  if (actions.size() != rewards.size() || t >= actions.size())
    throw std::invalid_argument("TransitionMatrixSet::record: bad log slice");
  if (rewards[t] <= 0.0) return;
  for (int tau = 1; tau <= order_max_ && static_cast<size_t>(tau) <= t; ++tau) {
    const size_t prev = t - static_cast<size_t>(tau);
    if (rewards[prev] > 0.0) mats_[static_cast<size_t>(tau - 1)](actions[prev], actions[t]) += 1.0;
  }
}

void TransitionMatrixSet::record_all(std::span<const int> actions,
                                     std::span<const double> rewards) {
  for (size_t t = 0; t < actions.size(); ++t) record(actions, rewards, t);
}

const Eigen::MatrixXd& TransitionMatrixSet::matrix(int tau) const {
  if (tau < 1 || tau > order_max_) throw std::out_of_range("TransitionMatrixSet: order out of range");
  return mats_[static_cast<size_t>(tau - 1)];
}

double TransitionMatrixSet::total(int tau) const { return matrix(tau).sum(); }

void TransitionMatrixSet::clear() {
  for (auto& m : mats_) m.setZero();
}

std::optional<double> normalized_correlation(const TransitionMatrixSet& a,
                                             const TransitionMatrixSet& b, int tau) {
  if (a.n_actions() != b.n_actions())
    throw std::invalid_argument("normalized_correlation: action-space mismatch");
  const double ta = a.total(tau);
  const double tb = b.total(tau);
  if (ta <= 0.0 || tb <= 0.0) return std::nullopt;  // insufficient observation
  const double overlap = a.matrix(tau).cwiseProduct(b.matrix(tau)).sum();
  return overlap / (ta * tb);
}

namespace {

// Clamp negatives to zero, then scale to sum 1; uniform on degenerate input.
Eigen::VectorXd normalize_clamped(Eigen::VectorXd v) {
  v = v.cwiseMax(0.0);
  const double total = v.sum();
  if (total <= 0.0) return Eigen::VectorXd::Constant(v.size(), 1.0 / static_cast<double>(v.size()));
  return v / total;
}

}  // namespace

Eigen::VectorXd exploration_distribution(const TransitionMatrixSet& other_policy,
                                         std::span<const int> recent_actions,
                                         std::span<const double> recent_rewards,
                                         const Eigen::VectorXd& reg, const OrthoConfig& cfg) {
  const int n = other_policy.n_actions();
  if (recent_actions.size() != recent_rewards.size())
    throw std::invalid_argument("exploration_distribution: action/reward length mismatch");
  if (reg.size() != 0 && reg.size() != n)
    throw std::invalid_argument("exploration_distribution: regularizer length mismatch");

  const double uniform = 1.0 / static_cast<double>(n);
  Eigen::VectorXd accum = Eigen::VectorXd::Constant(n, uniform);
  double decay_pow = 1.0;
  const int lags = std::min<int>(cfg.order_max, static_cast<int>(recent_actions.size()));
  for (int i = 0; i < lags; ++i) {
    const int tau = i + 1;
    const int a = recent_actions[static_cast<size_t>(i)];
    if (a < 0 || a >= n) throw std::out_of_range("exploration_distribution: action out of range");
    // Rarely-transitioned-into channels of the other policy get more mass.
    Eigen::VectorXd p_tau =
        (other_policy.matrix(tau).row(a).transpose().array() + 1.0).inverse();
    p_tau /= p_tau.sum();
    const double eta = recent_rewards[static_cast<size_t>(i)] > 0.0 ? 1.5 : -0.5;
    accum += decay_pow * eta * (p_tau.array() - uniform).matrix();
    decay_pow *= cfg.decay;
  }
  if (reg.size() == n) accum += cfg.reg_weight * reg;
  return normalize_clamped(std::move(accum));
}

int switch_defense_tick(int current_policy, double accuracy, long clock, const OrthoConfig& cfg) {
  if (clock <= 0 || clock % cfg.switch_period != 0) return current_policy;
  if (accuracy < cfg.switch_threshold) return 1 - current_policy;
  return current_policy;
}

namespace {

struct ObservationStats {
  TransitionMatrixSet transitions;
  TransitionMatrixSet first_half;
  TransitionMatrixSet second_half;
  Eigen::VectorXd success_counts;  // per-action successes (the regularizer source)
  double accuracy = 0.0;
};

// Runs the policy greedily (no learning) and records its transition pattern.
ObservationStats observe_policy(Victim& policy, ChannelEnv& env, const OrthoConfig& cfg) {
  ObservationStats stats{TransitionMatrixSet(policy.n_channels(), cfg.order_max),
                         TransitionMatrixSet(policy.n_channels(), cfg.order_max),
                         TransitionMatrixSet(policy.n_channels(), cfg.order_max),
                         Eigen::VectorXd::Zero(policy.n_channels())};
  const int slots = cfg.listen_period;
  std::vector<int> actions(static_cast<size_t>(slots));
  std::vector<double> rewards(static_cast<size_t>(slots));
  policy.set_learning_enabled(false);
  int hits = 0;
  for (int t = 0; t < slots; ++t) {
    env.advance();
    const Eigen::VectorXd& scores = policy.policy_scores();
    int a = 0;
    for (int i = 1; i < static_cast<int>(scores.size()); ++i)
      if (scores[i] > scores[a]) a = i;
    const auto outcome = env.transmit(a, std::nullopt);
    const auto res = policy.learn(a, outcome);
    actions[static_cast<size_t>(t)] = a;
    rewards[static_cast<size_t>(t)] = res.reward;
    if (res.success) {
      ++hits;
      stats.success_counts[a] += 1.0;
    }
    stats.transitions.record(actions, rewards, static_cast<size_t>(t));
  }
  policy.set_learning_enabled(true);
  const size_t half = static_cast<size_t>(slots) / 2;
  std::span<const int> a_all(actions);
  std::span<const double> r_all(rewards);
  stats.first_half.record_all(a_all.subspan(0, half), r_all.subspan(0, half));
  stats.second_half.record_all(a_all.subspan(half), r_all.subspan(half));
  stats.accuracy = static_cast<double>(hits) / static_cast<double>(slots);
  return stats;
}

// One guided-exploration training turn against the other policy's matrices.
void train_policy_turn(Victim& policy, ChannelEnv& env, const ObservationStats& other,
                       const OrthoConfig& cfg, RngStream& rng) {
  const int n = policy.n_channels();
  Eigen::VectorXd reg = Eigen::VectorXd::Zero(n);
  const double reg_total = other.success_counts.sum();
  if (reg_total > 0.0) reg = other.success_counts / reg_total;

  std::deque<int> recent_actions;
  std::deque<double> recent_rewards;
  std::vector<int> actions_buf;
  std::vector<double> rewards_buf;
  for (int t = 0; t < cfg.explore_period; ++t) {
    env.advance();
    int a;
    if (rng.uniform() < cfg.explore_eps) {
      actions_buf.assign(recent_actions.begin(), recent_actions.end());
      rewards_buf.assign(recent_rewards.begin(), recent_rewards.end());
      const Eigen::VectorXd dist =
          exploration_distribution(other.transitions, actions_buf, rewards_buf, reg, cfg);
      a = rng.sample_discrete({dist.data(), static_cast<size_t>(dist.size())});
    } else {
      const Eigen::VectorXd& scores = policy.policy_scores();
      a = 0;
      for (int i = 1; i < n; ++i)
        if (scores[i] > scores[a]) a = i;
    }
    const auto res = policy.learn(a, env.transmit(a, std::nullopt));
    recent_actions.push_front(a);
    recent_rewards.push_front(res.reward);
    if (static_cast<int>(recent_actions.size()) > cfg.order_max) {
      recent_actions.pop_back();
      recent_rewards.pop_back();
    }
  }
}

double worst_ratio(const OrthoIterationStats& it) {
  double worst = 0.0;
  for (size_t i = 0; i < it.correlation.size(); ++i) {
    const double self = it.self_correlation[i];
    if (self <= 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, it.correlation[i] / self);
  }
  return worst;
}

}  // namespace

OrthoPair train_orthogonal_pair(const ParameterBlob& victim_blob, const VictimConfig& victim_cfg,
                                const ChannelEnv& env_template, const OrthoConfig& cfg,
                                std::uint64_t seed) {
  VictimConfig pcfg = victim_cfg;
  pcfg.agent.actor_lr *= cfg.lr_boost;

  Victim policy1(pcfg, derive_seed(seed, "ortho.policy1"));
  Victim policy2(pcfg, derive_seed(seed, "ortho.policy2"));
  policy1.restore(victim_blob);
  policy2.restore(victim_blob);
  policy1.set_epsilon(0.0);
  policy2.set_epsilon(0.0);

  ChannelEnv env = env_template.reseeded(derive_seed(seed, "ortho.env"));
  RngStream explore_rng(derive_seed(seed, "ortho.explore"));

  OrthoPair out{victim_blob, victim_blob, {}};
  double best_ratio = std::numeric_limits<double>::infinity();

  ObservationStats obs2 = observe_policy(policy2, env, cfg);
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    train_policy_turn(policy1, env, obs2, cfg, explore_rng);
    ObservationStats obs1 = observe_policy(policy1, env, cfg);
    train_policy_turn(policy2, env, obs1, cfg, explore_rng);
    obs2 = observe_policy(policy2, env, cfg);

    OrthoIterationStats stats;
    stats.accuracy1 = obs1.accuracy;
    stats.accuracy2 = obs2.accuracy;
    for (int tau = 1; tau <= cfg.corr_orders; ++tau) {
      stats.correlation.push_back(
          normalized_correlation(obs1.transitions, obs2.transitions, tau).value_or(0.0));
      stats.self_correlation.push_back(
          normalized_correlation(obs1.first_half, obs1.second_half, tau).value_or(0.0));
    }
    out.report.iterations.push_back(stats);

    const double ratio = worst_ratio(stats);
    if (ratio < best_ratio) {
      best_ratio = ratio;
      out.policy1 = policy1.snapshot();
      out.policy2 = policy2.snapshot();
      out.report.chosen_iteration = iter;
    }
    if (ratio < cfg.correlation_target_ratio) {
      out.report.converged = true;
      break;
    }
  }
  return out;
}

void write_ortho_report(const OrthoTrainReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report file: " + path.string());
  out << "iteration";
  if (!report.iterations.empty()) {
    for (size_t i = 0; i < report.iterations.front().correlation.size(); ++i)
      out << "\tcorr_tau" << (i + 1);
    for (size_t i = 0; i < report.iterations.front().self_correlation.size(); ++i)
      out << "\tself_corr_tau" << (i + 1);
  }
  out << "\taccuracy1\taccuracy2\n";
  for (size_t i = 0; i < report.iterations.size(); ++i) {
    const auto& it = report.iterations[i];
    out << i;
    for (double c : it.correlation) out << '\t' << c;
    for (double c : it.self_correlation) out << '\t' << c;
    out << '\t' << it.accuracy1 << '\t' << it.accuracy2 << '\n';
  }
  out << "converged\t" << (report.converged ? 1 : 0) << "\nchosen_iteration\t"
      << report.chosen_iteration << '\n';
}

}  // namespace jamsim
