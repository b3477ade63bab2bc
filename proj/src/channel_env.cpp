#include "jamsim/channel_env.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace jamsim {

std::vector<int> adjacent_good_set(int state, int n_channels, int n_good) {
  std::vector<int> out(n_good);
  for (int j = 0; j < n_good; ++j) out[j] = (state + j) % n_channels;
  return out;
}

ChannelEnv::ChannelEnv(int n_channels, int n_good, double switch_prob, std::uint64_t seed,
                       GoodSetMapping mapping, std::optional<std::vector<int>> permutation)
    : n_(n_channels), k_(n_good), rho_(switch_prob), mapping_(std::move(mapping)), rng_(seed) {
  if (n_ <= 0) throw std::invalid_argument("ChannelEnv: n_channels must be positive");
  if (k_ < 1 || k_ >= n_) throw std::invalid_argument("ChannelEnv: need 1 <= n_good < n_channels");
  if (rho_ < 0.0 || rho_ > 1.0) throw std::invalid_argument("ChannelEnv: switch_prob outside [0,1]");
  if (permutation) {
    set_permutation(std::move(*permutation));
  } else {
    perm_.resize(n_);
    std::iota(perm_.begin(), perm_.end(), 0);
  }
}

void ChannelEnv::set_permutation(std::vector<int> permutation) {
  if (static_cast<int>(permutation.size()) != n_)
    throw std::invalid_argument("ChannelEnv: permutation size mismatch");
  std::vector<bool> seen(n_, false);
  for (int p : permutation) {
    if (p < 0 || p >= n_ || seen[p]) throw std::invalid_argument("ChannelEnv: not a permutation");
    seen[p] = true;
  }
  perm_ = std::move(permutation);
}

ChannelStateVector ChannelEnv::advance() {
  if (rng_.uniform() < rho_) state_ = (state_ + 1) % n_;
  return state_vector();
}

std::vector<int> ChannelEnv::good_set() const {
  std::vector<int> base = mapping_(state_, n_, k_);
  for (int& c : base) c = perm_[c];
  std::sort(base.begin(), base.end());
  return base;
}

bool ChannelEnv::is_good(int channel) const {
  if (channel < 0 || channel >= n_) throw std::out_of_range("ChannelEnv::is_good: channel out of range");
  for (int c : mapping_(state_, n_, k_))
    if (perm_[c] == channel) return true;
  return false;
}

ChannelStateVector ChannelEnv::state_vector() const {
  ChannelStateVector v;
  v.good.assign(n_, false);
  for (int c : mapping_(state_, n_, k_)) v.good[perm_[c]] = true;
  return v;
}

TransmissionOutcome ChannelEnv::transmit(int victim_channel, std::optional<int> jammed_channel) const {
  if (victim_channel < 0 || victim_channel >= n_)
    throw std::out_of_range("ChannelEnv::transmit: victim channel out of range");
  if (jammed_channel && (*jammed_channel < 0 || *jammed_channel >= n_))
    throw std::out_of_range("ChannelEnv::transmit: jammed channel out of range");

  const bool good = is_good(victim_channel);
  if (jammed_channel && *jammed_channel == victim_channel)
    return {TransmitStatus::fail_jammed, good};
  if (!good) return {TransmitStatus::fail_bad_channel, false};
  return {TransmitStatus::success, true};
}

ChannelEnv ChannelEnv::reseeded(std::uint64_t seed) const {
  ChannelEnv copy = *this;
  copy.rng_ = RngStream(seed);
  copy.state_ = 0;
  return copy;
}

void ChannelEnv::set_state_index(int s) {
  if (s < 0 || s >= n_) throw std::out_of_range("ChannelEnv: state index out of range");
  state_ = s;
}

}  // namespace jamsim
