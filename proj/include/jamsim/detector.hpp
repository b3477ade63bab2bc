#pragma once

#include <span>

namespace jamsim {

struct DetectorConfig {
  int probe_duration = 8000;      // slots of orthogonal-defense probing
  double recovery_floor = 0.20;   // an attack recovers above this at some point
  double collapse_ceiling = 0.05; // an environment change stays below this
  double trigger_drop = 0.50;     // accuracy drop that starts a probe
  int grace_window = 500;         // initial slots ignored by the minimum test
};

enum class Verdict { Attack, EnvironmentChange, Inconclusive };

enum class ResponsePlan {
  EngageImitationDefense,  // confirmed attack: switch to the stronger defense
  RetrainWithoutDefense,   // environment changed: drop defenses, keep learning
  ExtendProbe,             // inconclusive: probe for one more duration
};

// Classifies a probe-phase accuracy trace (the moving-average accuracy while
// the orthogonal-policies defense runs). Pure function of trace and config.
// Throws std::invalid_argument when the trace is shorter than probe_duration.
Verdict detect(std::span<const double> accuracy_trace, const DetectorConfig& cfg);

ResponsePlan respond(Verdict verdict);

const char* to_string(Verdict v);

}  // namespace jamsim
