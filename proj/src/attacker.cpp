#include "jamsim/attacker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jamsim {

double attacker_reward(int attacker_action, int victim_action, bool victim_good) {
  if (attacker_action == victim_action) return victim_good ? 1.0 : 0.5;
  return victim_good ? -1.0 : -0.5;
}

BudgetState::BudgetState(const BudgetConfig& cfg) : cfg_(cfg) {
  if (cfg_.enabled) {
    if (cfg_.theta <= 0.0 || cfg_.theta >= 1.0)
      throw std::invalid_argument("BudgetState: theta must lie in (0,1)");
    if (cfg_.period <= 0) throw std::invalid_argument("BudgetState: period must be positive");
    recorded_.reserve(static_cast<size_t>(cfg_.period));
  }
}

int BudgetState::max_attacks_per_period() const {
  return static_cast<int>(std::floor(cfg_.period * cfg_.theta));
}

void BudgetState::record(double p_max) {
  recorded_.push_back(p_max);
  if (recorded_.size() < static_cast<size_t>(cfg_.period)) return;
  // Period complete: the floor(T*theta_u)-th largest recorded peak becomes
  // the new threshold, then counters reset.
  const int rank = static_cast<int>(std::floor(cfg_.period * cfg_.theta_u));
  if (rank <= 0) {
    p_theta_ = std::numeric_limits<double>::infinity();
  } else {
    const size_t k = std::min(static_cast<size_t>(rank), recorded_.size()) - 1;
    std::nth_element(recorded_.begin(), recorded_.begin() + static_cast<std::ptrdiff_t>(k),
                     recorded_.end(), std::greater<double>());
    p_theta_ = recorded_[k];
  }
  recorded_.clear();
  attacks_this_period_ = 0;
}

bool BudgetState::tick(std::span<const double> scores) {
  if (!cfg_.enabled) return true;
  const double p_max = *std::max_element(scores.begin(), scores.end());
  const bool permitted = p_max > p_theta_ && attacks_this_period_ < max_attacks_per_period();
  if (permitted) ++attacks_this_period_;
  record(p_max);
  return permitted;
}

void BudgetState::observe(std::span<const double> scores) {
  if (!cfg_.enabled) return;
  record(*std::max_element(scores.begin(), scores.end()));
}

Attacker::Attacker(const AttackerConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      agent_(cfg.n_channels, cfg.n_channels * cfg.memory_depth, cfg.agent, seed),
      memory_(cfg.n_channels, cfg.memory_depth),
      prev_memory_(cfg.n_channels, cfg.memory_depth),
      budget_(cfg.budget),
      victim_estimate_(std::max(cfg.sra.accuracy_window, 1)) {
  initial_policy_ = agent_.snapshot();
}

void Attacker::capture_initial_policy() { initial_policy_ = agent_.snapshot(); }

void Attacker::begin_attack() {
  attack_begun_ = true;
  phase_ = AttackerPhase::attack;
  learning_enabled_ = true;
  cycle_clock_ = 0;
}

std::optional<int> Attacker::commit() {
  const ActResult res = agent_.act(memory_, cfg_.epsilon);
  pending_action_ = res.action;
  last_jam_.reset();
  if (jamming_phase()) {
    if (budget_.tick({res.scores.data(), static_cast<size_t>(res.scores.size())}))
      last_jam_ = pending_action_;
  } else {
    budget_.observe({res.scores.data(), static_cast<size_t>(res.scores.size())});
  }
  return last_jam_;
}

double Attacker::feedback(int victim_action, bool victim_good) {
  if (pending_action_ < 0) throw std::logic_error("Attacker::feedback before commit");
  const double r = attacker_reward(pending_action_, victim_action, victim_good);

  prev_memory_ = memory_;
  memory_.push(pending_action_, r);
  if (learning_enabled_) {
    const double delta = agent_.td_error(r, prev_memory_, memory_);
    agent_.update_critic(delta, prev_memory_);
    agent_.update_actor(delta, prev_memory_, pending_action_);
  }

  // The attacker's own view of the victim's slot outcome, from its oracle
  // feedback and its knowledge of the jam it emitted.
  const bool victim_success = victim_good && (!last_jam_ || *last_jam_ != victim_action);
  victim_estimate_.append(victim_success);

  if (attack_begun_) sra_tick(victim_accuracy_estimate());
  return r;
}

double Attacker::victim_accuracy_estimate() const {
  if (victim_estimate_.recorded() == 0) return 1.0;
  return victim_estimate_.accuracy(cfg_.sra.accuracy_window);
}

void Attacker::enter_retrain() {
  phase_ = AttackerPhase::retrain;
  retrain_clock_ = 0;
  learning_enabled_ = true;
  agent_.restore(initial_policy_);
}

void Attacker::sra_tick(double victim_accuracy) {
  switch (phase_) {
    case AttackerPhase::attack:
      ++cycle_clock_;
      if (victim_accuracy < cfg_.sra.freeze_threshold) {
        phase_ = AttackerPhase::frozen_attack;
        learning_enabled_ = false;
      } else if (cycle_clock_ > cfg_.sra.cycle_length) {
        enter_retrain();
      }
      break;
    case AttackerPhase::frozen_attack:
      ++cycle_clock_;
      if (victim_accuracy > cfg_.sra.freeze_threshold || cycle_clock_ > cfg_.sra.cycle_length)
        enter_retrain();
      break;
    case AttackerPhase::retrain:
      ++retrain_clock_;
      if (retrain_clock_ >= cfg_.sra.retrain_length) {
        phase_ = AttackerPhase::attack;
        learning_enabled_ = true;
        cycle_clock_ = 0;
      }
      break;
    case AttackerPhase::listen:
      break;
  }
}

}  // namespace jamsim
