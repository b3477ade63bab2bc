#pragma once

#include <Eigen/Core>
#include <vector>

#include "jamsim/rng.hpp"

namespace jamsim {

/// Fully connected network with tanh hidden layers and a linear output layer.
/// All parameters live in one flat vector so snapshots, serialization and
/// finite-difference checks operate on the same memory.
///
/// Not thread-safe: forward() caches activations for the following backward().
class Mlp {
 public:
  // layer_sizes = {input, hidden..., output}. Weights are initialized
  // uniformly in +-1/sqrt(fan_in), biases at zero.
  Mlp(std::vector<int> layer_sizes, RngStream& init_rng);

  // Output activations; valid until the next forward() on this object.
  const Eigen::VectorXd& forward(const Eigen::Ref<const Eigen::VectorXd>& input);

  // Accumulates d(grad_output . output)/d(params) into `grad`, using the
  // activations cached by the last forward(). `grad` must have param_count()
  // entries; the caller zeroes it when accumulation is not wanted.
  void backward(const Eigen::VectorXd& grad_output, Eigen::VectorXd& grad);

  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  const std::vector<int>& layer_sizes() const { return sizes_; }

  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }
  Eigen::Index param_count() const { return params_.size(); }

 private:
  std::vector<int> sizes_;
  Eigen::VectorXd params_;
  std::vector<Eigen::Index> w_off_, b_off_;  // per weight layer l=0..K-1
  std::vector<Eigen::VectorXd> act_;         // act_[0]=input, act_[K]=output
  Eigen::VectorXd delta_, delta_prev_;       // backward scratch
};

}  // namespace jamsim
