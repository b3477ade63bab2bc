#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "jamsim/rng.hpp"

namespace jamsim {

/// Good/bad flags for all channels at one instant.
struct ChannelStateVector {
  std::vector<bool> good;
};

enum class TransmitStatus { success, fail_bad_channel, fail_jammed };

struct TransmissionOutcome {
  TransmitStatus status;
  // Underlying channel state of the victim's pick, ignoring jamming. Needed
  // for the attacker's feedback and the PID partial-reward variant.
  bool was_good_pre_jam;

  bool success() const { return status == TransmitStatus::success; }
};

// Maps a hidden state index to the set of good channel indices (before the
// permutation is applied).
using GoodSetMapping = std::function<std::vector<int>(int state, int n_channels, int n_good)>;

// Default mapping: state s marks channels {s, s+1, ..., s+k-1} mod N good.
std::vector<int> adjacent_good_set(int state, int n_channels, int n_good);

/// Hidden Markov round-robin channel process. The state index advances by one
/// (mod N) with probability `switch_prob` per slot; in every state exactly
/// `n_good` channels are good.
class ChannelEnv {
 public:
  ChannelEnv(int n_channels, int n_good, double switch_prob, std::uint64_t seed,
             GoodSetMapping mapping = adjacent_good_set,
             std::optional<std::vector<int>> permutation = std::nullopt);

  // One slot tick; returns the (possibly advanced) state's good/bad vector.
  ChannelStateVector advance();

  // Good channel indices for the current state, after the permutation.
  std::vector<int> good_set() const;
  bool is_good(int channel) const;
  ChannelStateVector state_vector() const;

  TransmissionOutcome transmit(int victim_channel, std::optional<int> jammed_channel) const;

  // Environment change: remaps channel indices (e.g. a shuffled channel list).
  void set_permutation(std::vector<int> permutation);

  // Copy with the same pattern parameters but a fresh stream and state 0.
  ChannelEnv reseeded(std::uint64_t seed) const;

  int n_channels() const { return n_; }
  int n_good() const { return k_; }
  int state_index() const { return state_; }
  void set_state_index(int s);

 private:
  int n_;
  int k_;
  double rho_;
  int state_ = 0;
  std::vector<int> perm_;
  GoodSetMapping mapping_;
  RngStream rng_;
};

}  // namespace jamsim
