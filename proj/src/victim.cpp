#include "jamsim/victim.hpp"

#include <algorithm>
#include <numeric>

namespace jamsim {

std::vector<int> rank_channels(std::span<const double> scores) {
  std::vector<int> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return scores[a] > scores[b]; });
  return idx;
}

double victim_reward(const TransmissionOutcome& outcome, bool partial_reward) {
  if (outcome.success()) return 1.0;
  if (partial_reward && outcome.status == TransmitStatus::fail_jammed && outcome.was_good_pre_jam)
    return 0.5;
  return -1.0;
}

Victim::Victim(const VictimConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      epsilon_(cfg.epsilon),
      partial_reward_(cfg.partial_reward),
      agent_(cfg.n_channels, cfg.n_channels * cfg.memory_depth, cfg.agent, seed),
      memory_(cfg.n_channels, cfg.memory_depth),
      prev_memory_(cfg.n_channels, cfg.memory_depth),
      history_(cfg.accuracy_capacity) {}

const Eigen::VectorXd& Victim::policy_scores() { return agent_.policy_scores(memory_); }

int Victim::select_action() { return agent_.act(memory_, epsilon_).action; }

VictimStepResult Victim::learn(int action, const TransmissionOutcome& outcome) {
  const double r = victim_reward(outcome, partial_reward_);
  prev_memory_ = memory_;
  memory_.push(action, r);
  if (learning_enabled_) {
    const double delta = agent_.td_error(r, prev_memory_, memory_);
    agent_.update_critic(delta, prev_memory_);
    agent_.update_actor(delta, prev_memory_, action);
  }
  history_.append(outcome.success());
  return {action, r, outcome.success()};
}

VictimStepResult victim_step(Victim& v, ChannelEnv& env, std::optional<int> jammed) {
  const int action = v.select_action();
  return v.learn(action, env.transmit(action, jammed));
}

}  // namespace jamsim
