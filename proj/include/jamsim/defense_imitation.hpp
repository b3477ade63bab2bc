#pragma once

#include <optional>
#include <span>
#include <vector>

#include "jamsim/actor_critic.hpp"
#include "jamsim/observation.hpp"
#include "jamsim/rng.hpp"

namespace jamsim {

// +1 when the imitation guessed the victim's realized channel, -1 otherwise.
double imitation_reward(int a_imitation, int a_victim);

enum class ImitationRewardVariant {
  match,           // +-1 on matching the victim's realized action
  true_attacker,   // the true attacker's four-case reward (robustness variant)
  good_indicator,  // 1 when the victim's channel was good, else 0
};

struct ImitationConfig {
  int n_channels = 16;
  int memory_depth = 16;
  double epsilon = 0.1;
  AgentConfig agent{.hidden = {64, 32}};  // deliberately smaller than the true attacker
  std::vector<double> probs;              // rank probabilities; defaulted when empty
  ImitationRewardVariant variant = ImitationRewardVariant::match;
};

std::vector<double> default_imitation_probs(int n_channels);

// Requires probs nonnegative, summing to 1, with probs[0] < 0.5 and the tail
// non-increasing from rank 2 on. Throws std::invalid_argument otherwise.
void validate_imitation_probs(std::span<const double> probs);

// Two-branch rule: take the top-ranked channel unless the imitation predicts
// exactly that channel, in which case sample the rank from `probs`.
int imitation_select_rule(std::span<const int> ranked_channels, int a_imitation,
                          std::span<const double> probs, RngStream& rng);

/// Victim-trained surrogate of the jammer. Sees only what the victim
/// legitimately has: its own guesses and the victim's realized channels
/// (plus the channel-state oracle under the non-default reward variants).
class ImitationAttacker {
 public:
  ImitationAttacker(const ImitationConfig& cfg, std::uint64_t seed);

  // This slot's jam prediction (epsilon-greedy on its own memory).
  int predict();

  // Trains on the realized victim action. `victim_good` is consumed only by
  // the non-default reward variants and may stay nullopt otherwise.
  double observe(int victim_action, std::optional<bool> victim_good = std::nullopt);

  int last_prediction() const { return pending_; }
  ActorCriticAgent& agent() { return agent_; }
  ImitationRewardVariant variant() const { return cfg_.variant; }

 private:
  ImitationConfig cfg_;
  ActorCriticAgent agent_;
  ObservationMatrix memory_, prev_memory_;
  int pending_ = -1;
};

}  // namespace jamsim
