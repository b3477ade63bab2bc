#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace jamsim {

/// Sliding per-channel feedback memory. Column 0 holds the newest slot; each
/// column has at most one nonzero entry (the sensed channel's reward).
class ObservationMatrix {
 public:
  ObservationMatrix(int n_channels, int depth)
      : m_(Eigen::MatrixXd::Zero(n_channels, depth)) {
    if (n_channels <= 0 || depth <= 0)
      throw std::invalid_argument("ObservationMatrix: dimensions must be positive");
  }

  // Drops the oldest column and records `value` for `channel` in the new one.
  void push(int channel, double value) {
    if (channel < 0 || channel >= m_.rows())
      throw std::out_of_range("ObservationMatrix::push: channel out of range");
    if (!valid_feedback(value))
      throw std::invalid_argument("ObservationMatrix::push: value must be 0, +-0.5 or +-1");
    for (Eigen::Index j = m_.cols() - 1; j > 0; --j) m_.col(j) = m_.col(j - 1);
    m_.col(0).setZero();
    m_(channel, 0) = value;
  }

  static bool valid_feedback(double v) {
    return v == 0.0 || v == 1.0 || v == -1.0 || v == 0.5 || v == -0.5;
  }

  int channels() const { return static_cast<int>(m_.rows()); }
  int depth() const { return static_cast<int>(m_.cols()); }
  int size() const { return static_cast<int>(m_.size()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::Map<const Eigen::VectorXd> flat() const { return {m_.data(), m_.size()}; }
  void clear() { m_.setZero(); }

 private:
  Eigen::MatrixXd m_;
};

}  // namespace jamsim
