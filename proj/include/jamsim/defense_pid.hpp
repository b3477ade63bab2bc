#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "jamsim/rng.hpp"

namespace jamsim {

/// Rank-probability array plus PID gain vectors over the accuracy history.
struct PidGains {
  Eigen::VectorXd base_probs;  // p(i), non-increasing, sums to 1
  Eigen::VectorXd kp, ki, kd;  // non-decreasing in the rank index
  int short_window = 10;
  int long_window = 200;
  int diff_window = 400;
};

PidGains default_pid_gains(int n_channels);

// Throws std::invalid_argument when the gain vectors violate the contract.
void validate_pid_gains(const PidGains& g);

/// Append-only ring of per-slot success indicators, capacity >= diff window.
class AccuracyHistory {
 public:
  explicit AccuracyHistory(int capacity = 400);
  void append(bool success);
  // Sum of the indicators at offsets [from_back, to_back] before now
  // (1 = most recent slot). Slots older than the history count as zero.
  double window_sum(int from_back, int to_back) const;
  size_t size() const { return count_; }

 private:
  std::vector<unsigned char> ring_;
  size_t head_ = 0;
  size_t count_ = 0;
};

// Probability over ranks: base probs shifted by the weighted short-term,
// long-term, and trend sums of the accuracy history, clamped at zero and
// renormalized. Falls back to base_probs when everything clamps to zero.
Eigen::VectorXd pid_probabilities(const PidGains& gains, const AccuracyHistory& history);

// Samples a rank from `probs` and returns the channel at that rank.
// Throws std::invalid_argument on a negative or non-normalized probs vector.
int diversified_select(std::span<const int> ranked_channels, std::span<const double> probs,
                       RngStream& rng);

}  // namespace jamsim
