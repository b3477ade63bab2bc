#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "jamsim/detector.hpp"
#include "jamsim/rng.hpp"

using jamsim::detect;
using jamsim::DetectorConfig;
using jamsim::respond;
using jamsim::ResponsePlan;
using jamsim::Verdict;

namespace {

DetectorConfig small_probe() {
  DetectorConfig cfg;
  cfg.probe_duration = 1000;
  cfg.grace_window = 100;
  return cfg;
}

}  // namespace

TEST_CASE("oscillation above the floor reads as an attack") {
  const DetectorConfig cfg = small_probe();
  std::vector<double> trace(1000);
  for (size_t i = 0; i < trace.size(); ++i)
    trace[i] = 0.5 + 0.28 * std::sin(i / 40.0);  // fluctuates, minimum ~0.22
  CHECK(detect(trace, cfg) == Verdict::Attack);
}

TEST_CASE("a trace pinned near zero reads as an environment change") {
  const DetectorConfig cfg = small_probe();
  std::vector<double> trace(1000, 0.02);
  trace[3] = 0.04;
  CHECK(detect(trace, cfg) == Verdict::EnvironmentChange);
}

TEST_CASE("an initial crash before the grace window still reads as an attack") {
  const DetectorConfig cfg = small_probe();
  std::vector<double> trace(1000, 0.5);
  for (size_t i = 0; i < 50; ++i) trace[i] = 0.01;  // crash inside the grace window
  CHECK(detect(trace, cfg) == Verdict::Attack);
}

TEST_CASE("hovering between the bands is inconclusive") {
  const DetectorConfig cfg = small_probe();
  std::vector<double> trace(1000, 0.10);
  CHECK(detect(trace, cfg) == Verdict::Inconclusive);
}

TEST_CASE("short traces are rejected") {
  const DetectorConfig cfg = small_probe();
  std::vector<double> trace(999, 0.5);
  CHECK_THROWS_AS(detect(trace, cfg), std::invalid_argument);
}

TEST_CASE("misordered bands are rejected") {
  DetectorConfig cfg = small_probe();
  cfg.collapse_ceiling = 0.3;
  std::vector<double> trace(1000, 0.5);
  CHECK_THROWS_AS(detect(trace, cfg), std::invalid_argument);
}

TEST_CASE("verdicts partition random traces") {
  const DetectorConfig cfg = small_probe();
  jamsim::RngStream rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> trace(1000);
    const double level = rng.uniform();
    for (auto& v : trace) v = std::clamp(level + rng.uniform_range(-0.1, 0.1), 0.0, 1.0);
    const Verdict verdict = detect(trace, cfg);

    const auto latter = std::vector<double>(trace.begin() + 500, trace.end());
    const bool env = *std::max_element(latter.begin(), latter.end()) < cfg.collapse_ceiling;
    const auto post = std::vector<double>(trace.begin() + 100, trace.end());
    const bool attack = !env &&
                        *std::max_element(trace.begin(), trace.end()) > cfg.recovery_floor &&
                        *std::min_element(post.begin(), post.end()) > cfg.collapse_ceiling;
    if (env) CHECK(verdict == Verdict::EnvironmentChange);
    else if (attack) CHECK(verdict == Verdict::Attack);
    else CHECK(verdict == Verdict::Inconclusive);
  }
}

TEST_CASE("responses map verdicts to the documented plans") {
  CHECK(respond(Verdict::Attack) == ResponsePlan::EngageImitationDefense);
  CHECK(respond(Verdict::EnvironmentChange) == ResponsePlan::RetrainWithoutDefense);
  CHECK(respond(Verdict::Inconclusive) == ResponsePlan::ExtendProbe);
}
