#include "jamsim/detector.hpp"

#include <algorithm>
#include <stdexcept>

namespace jamsim {

Verdict detect(std::span<const double> accuracy_trace, const DetectorConfig& cfg) {
  if (cfg.collapse_ceiling >= cfg.recovery_floor)
    throw std::invalid_argument("DetectorConfig: collapse_ceiling must lie below recovery_floor");
  if (accuracy_trace.size() < static_cast<size_t>(cfg.probe_duration))
    throw std::invalid_argument("detect: trace shorter than probe_duration");

  const auto probe = accuracy_trace.first(static_cast<size_t>(cfg.probe_duration));
  const size_t grace = std::min(static_cast<size_t>(std::max(cfg.grace_window, 0)), probe.size());

  // Environment change: the latter half never lifts off the floor.
  const auto latter = probe.subspan(probe.size() / 2);
  if (*std::max_element(latter.begin(), latter.end()) < cfg.collapse_ceiling)
    return Verdict::EnvironmentChange;

  const double peak = *std::max_element(probe.begin(), probe.end());
  const auto post_grace = probe.subspan(grace);
  const double floor_after_grace =
      post_grace.empty() ? 0.0 : *std::min_element(post_grace.begin(), post_grace.end());
  if (peak > cfg.recovery_floor && floor_after_grace > cfg.collapse_ceiling)
    return Verdict::Attack;

  return Verdict::Inconclusive;
}

ResponsePlan respond(Verdict verdict) {
  switch (verdict) {
    case Verdict::Attack:
      return ResponsePlan::EngageImitationDefense;
    case Verdict::EnvironmentChange:
      return ResponsePlan::RetrainWithoutDefense;
    case Verdict::Inconclusive:
      return ResponsePlan::ExtendProbe;
  }
  throw std::logic_error("respond: unknown verdict");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Attack:
      return "attack";
    case Verdict::EnvironmentChange:
      return "environment_change";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

}  // namespace jamsim
