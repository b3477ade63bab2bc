#include "jamsim/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace jamsim {

namespace {

using MatMap = Eigen::Map<Eigen::MatrixXd>;
using ConstMatMap = Eigen::Map<const Eigen::MatrixXd>;
using VecMap = Eigen::Map<Eigen::VectorXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

}  // namespace

Mlp::Mlp(std::vector<int> layer_sizes, RngStream& init_rng) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw std::invalid_argument("Mlp: need at least input and output sizes");
  for (int s : sizes_)
    if (s <= 0) throw std::invalid_argument("Mlp: layer sizes must be positive");

  const size_t n_weight_layers = sizes_.size() - 1;
  Eigen::Index total = 0;
  for (size_t l = 0; l < n_weight_layers; ++l) {
    w_off_.push_back(total);
    total += static_cast<Eigen::Index>(sizes_[l + 1]) * sizes_[l];
    b_off_.push_back(total);
    total += sizes_[l + 1];
  }
  params_.resize(total);

  for (size_t l = 0; l < n_weight_layers; ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(sizes_[l]));
    MatMap w(params_.data() + w_off_[l], sizes_[l + 1], sizes_[l]);
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = init_rng.uniform_range(-bound, bound);
    VecMap(params_.data() + b_off_[l], sizes_[l + 1]).setZero();
  }

  act_.resize(sizes_.size());
  for (size_t i = 0; i < sizes_.size(); ++i) act_[i].resize(sizes_[i]);
}

const Eigen::VectorXd& Mlp::forward(const Eigen::Ref<const Eigen::VectorXd>& input) {
  if (input.size() != sizes_.front()) throw std::invalid_argument("Mlp::forward: input size mismatch");
  act_[0] = input;
  const size_t k = sizes_.size() - 1;
  for (size_t l = 0; l < k; ++l) {
    ConstMatMap w(params_.data() + w_off_[l], sizes_[l + 1], sizes_[l]);
    ConstVecMap b(params_.data() + b_off_[l], sizes_[l + 1]);
    act_[l + 1].noalias() = w * act_[l];
    act_[l + 1] += b;
    if (l + 1 < k) act_[l + 1] = act_[l + 1].array().tanh();
  }
  return act_[k];
}

void Mlp::backward(const Eigen::VectorXd& grad_output, Eigen::VectorXd& grad) {
  if (grad_output.size() != sizes_.back()) throw std::invalid_argument("Mlp::backward: grad size mismatch");
  if (grad.size() != params_.size()) throw std::invalid_argument("Mlp::backward: param grad size mismatch");

  delta_ = grad_output;  // output layer is linear
  const size_t k = sizes_.size() - 1;
  for (size_t li = k; li-- > 0;) {
    MatMap gw(grad.data() + w_off_[li], sizes_[li + 1], sizes_[li]);
    gw.noalias() += delta_ * act_[li].transpose();
    VecMap(grad.data() + b_off_[li], sizes_[li + 1]) += delta_;
    if (li > 0) {
      ConstMatMap w(params_.data() + w_off_[li], sizes_[li + 1], sizes_[li]);
      delta_prev_.noalias() = w.transpose() * delta_;
      delta_prev_.array() *= 1.0 - act_[li].array().square();  // tanh'
      delta_.swap(delta_prev_);
    }
  }
}

}  // namespace jamsim
