#include "jamsim/defense_imitation.hpp"

#include <cmath>
#include <stdexcept>

#include "jamsim/attacker.hpp"

namespace jamsim {

double imitation_reward(int a_imitation, int a_victim) {
  return a_imitation == a_victim ? 1.0 : -1.0;
}

std::vector<double> default_imitation_probs(int n_channels) {
  std::vector<double> p(static_cast<size_t>(n_channels), 0.0);
  const double head[] = {0.4, 0.2, 0.15, 0.1, 0.06, 0.04, 0.02, 0.015, 0.01, 0.005};
  double sum = 0.0;
  for (int i = 0; i < n_channels && i < 10; ++i) {
    p[static_cast<size_t>(i)] = head[i];
    sum += head[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

void validate_imitation_probs(std::span<const double> probs) {
  if (probs.size() < 2) throw std::invalid_argument("imitation probs: need at least two ranks");
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("imitation probs: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw std::invalid_argument("imitation probs: must sum to 1");
  if (probs[0] >= 0.5) throw std::invalid_argument("imitation probs: p(1) must be below 0.5");
  for (size_t i = 2; i < probs.size(); ++i)
    if (probs[i] > probs[i - 1] + 1e-12)
      throw std::invalid_argument("imitation probs: tail must be non-increasing");
}

int imitation_select_rule(std::span<const int> ranked_channels, int a_imitation,
                          std::span<const double> probs, RngStream& rng) {
  validate_imitation_probs(probs);
  if (ranked_channels.size() != probs.size())
    throw std::invalid_argument("imitation_select_rule: rank/probability length mismatch");
  if (a_imitation != ranked_channels[0]) return ranked_channels[0];
  return ranked_channels[static_cast<size_t>(rng.sample_discrete(probs))];
}

ImitationAttacker::ImitationAttacker(const ImitationConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      agent_(cfg.n_channels, cfg.n_channels * cfg.memory_depth, cfg.agent, seed),
      memory_(cfg.n_channels, cfg.memory_depth),
      prev_memory_(cfg.n_channels, cfg.memory_depth) {
  if (cfg_.probs.empty()) cfg_.probs = default_imitation_probs(cfg.n_channels);
}

int ImitationAttacker::predict() {
  pending_ = agent_.act(memory_, cfg_.epsilon).action;
  return pending_;
}

double ImitationAttacker::observe(int victim_action, std::optional<bool> victim_good) {
  if (pending_ < 0) throw std::logic_error("ImitationAttacker::observe before predict");
  double r = 0.0;
  switch (cfg_.variant) {
    case ImitationRewardVariant::match:
      r = imitation_reward(pending_, victim_action);
      break;
    case ImitationRewardVariant::true_attacker:
      if (!victim_good)
        throw std::invalid_argument("imitation true_attacker variant needs the channel state");
      r = attacker_reward(pending_, victim_action, *victim_good);
      break;
    case ImitationRewardVariant::good_indicator:
      if (!victim_good)
        throw std::invalid_argument("imitation good_indicator variant needs the channel state");
      r = *victim_good ? 1.0 : 0.0;
      break;
  }
  prev_memory_ = memory_;
  memory_.push(pending_, r);
  const double delta = agent_.td_error(r, prev_memory_, memory_);
  agent_.update_critic(delta, prev_memory_);
  agent_.update_actor(delta, prev_memory_, pending_);
  return r;
}

}  // namespace jamsim
