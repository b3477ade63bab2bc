#include "jamsim/defense_pid.hpp"

#include <cmath>
#include <stdexcept>

namespace jamsim {

namespace {
constexpr double kProbSumTolerance = 1e-6;
}

PidGains default_pid_gains(int n_channels) {
  PidGains g;
  g.base_probs = Eigen::VectorXd::Zero(n_channels);
  const double head[] = {0.55, 0.15, 0.10, 0.07, 0.05, 0.03, 0.02, 0.01, 0.01, 0.01};
  for (int i = 0; i < n_channels && i < 10; ++i) g.base_probs[i] = head[i];
  g.base_probs /= g.base_probs.sum();

  g.kp.resize(n_channels);
  g.ki.resize(n_channels);
  g.kd.resize(n_channels);
  for (int i = 0; i < n_channels; ++i) {
    const double ramp = n_channels > 1 ? static_cast<double>(i) / (n_channels - 1) : 0.0;
    g.kp[i] = 2e-3 * ramp;
    g.ki[i] = 2e-4 * ramp;
    g.kd[i] = 5e-4 * ramp;
  }
  return g;
}

void validate_pid_gains(const PidGains& g) {
  const auto n = g.base_probs.size();
  if (g.kp.size() != n || g.ki.size() != n || g.kd.size() != n)
    throw std::invalid_argument("PidGains: vector length mismatch");
  if (g.base_probs.minCoeff() < 0.0 || std::abs(g.base_probs.sum() - 1.0) > kProbSumTolerance)
    throw std::invalid_argument("PidGains: base_probs must be a probability vector");
  for (Eigen::Index i = 1; i < n; ++i) {
    if (g.base_probs[i] > g.base_probs[i - 1] + 1e-12)
      throw std::invalid_argument("PidGains: base_probs must be non-increasing");
    if (g.kp[i] + 1e-12 < g.kp[i - 1] || g.ki[i] + 1e-12 < g.ki[i - 1] ||
        g.kd[i] + 1e-12 < g.kd[i - 1])
      throw std::invalid_argument("PidGains: gain vectors must be non-decreasing");
  }
  if (g.short_window <= 0 || g.long_window <= 0 || g.diff_window <= 0)
    throw std::invalid_argument("PidGains: windows must be positive");
}

AccuracyHistory::AccuracyHistory(int capacity) : ring_(static_cast<size_t>(capacity), 0) {
  if (capacity <= 0) throw std::invalid_argument("AccuracyHistory: capacity must be positive");
}

void AccuracyHistory::append(bool success) {
  ring_[head_] = success ? 1 : 0;
  head_ = (head_ + 1) % ring_.size();
  if (count_ < ring_.size()) ++count_;
}

double AccuracyHistory::window_sum(int from_back, int to_back) const {
  if (from_back <= 0 || to_back < from_back)
    throw std::invalid_argument("AccuracyHistory: bad window bounds");
  if (static_cast<size_t>(to_back) > ring_.size())
    throw std::invalid_argument("AccuracyHistory: window exceeds capacity");
  double sum = 0.0;
  for (int off = from_back; off <= to_back; ++off) {
    if (static_cast<size_t>(off) > count_) break;  // pre-history slots count as zero
    const size_t idx = (head_ + ring_.size() - static_cast<size_t>(off)) % ring_.size();
    sum += ring_[idx];
  }
  return sum;
}

Eigen::VectorXd pid_probabilities(const PidGains& gains, const AccuracyHistory& history) {
  const double s_short = history.window_sum(1, gains.short_window);
  const double s_long = history.window_sum(1, gains.long_window);
  const double s_prev = history.window_sum(gains.long_window + 1, gains.diff_window);

  Eigen::VectorXd p =
      gains.base_probs + gains.kp * s_short + gains.ki * s_long + gains.kd * (s_long - s_prev);
  p = p.cwiseMax(0.0);
  const double total = p.sum();
  if (total <= 0.0) return gains.base_probs;  // degenerate: every entry clamped
  return p / total;
}

int diversified_select(std::span<const int> ranked_channels, std::span<const double> probs,
                       RngStream& rng) {
  if (ranked_channels.size() != probs.size())
    throw std::invalid_argument("diversified_select: rank/probability length mismatch");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("diversified_select: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTolerance)
    throw std::invalid_argument("diversified_select: probabilities must sum to 1");
  return ranked_channels[static_cast<size_t>(rng.sample_discrete(probs))];
}

}  // namespace jamsim
