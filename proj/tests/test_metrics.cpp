#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "jamsim/attacker.hpp"
#include "jamsim/metrics.hpp"

using jamsim::EmpiricalCdf;
using jamsim::MetricsLog;
using jamsim::SlotRecord;

namespace {

SlotRecord make_record(std::uint64_t slot, int victim, int attacker, int jam, bool good) {
  SlotRecord r;
  r.slot = slot;
  r.victim_action = victim;
  r.attacker_action = attacker;
  r.jam_channel = jam;
  r.pre_jam_good = good;
  const bool jammed = jam >= 0 && jam == victim;
  r.success = good && !jammed;
  r.victim_reward = r.success ? 1.0 : -1.0;
  if (attacker >= 0) r.attacker_reward = jamsim::attacker_reward(attacker, victim, good);
  r.attacker_phase = attacker >= 0 ? static_cast<std::uint8_t>(jamsim::AttackerPhase::attack) : 0;
  return r;
}

}  // namespace

TEST_CASE("moving average of a constant series is that constant") {
  const std::vector<double> series(100, 0.7);
  const auto ma = jamsim::moving_average(series, 10);
  for (double v : ma) CHECK(v == doctest::Approx(0.7));
  CHECK_THROWS_AS(jamsim::moving_average(series, 0), std::invalid_argument);
  CHECK_THROWS_AS(jamsim::moving_average({}, 5), std::invalid_argument);
}

TEST_CASE("moving average warms up over the first window") {
  const std::vector<double> series{1.0, 0.0, 0.0, 0.0};
  const auto ma = jamsim::moving_average(series, 2);
  CHECK(ma[0] == 1.0);
  CHECK(ma[1] == 0.5);
  CHECK(ma[2] == 0.0);
  CHECK(ma[3] == 0.0);
}

TEST_CASE("pdf and cdf of a two-point sample") {
  const std::vector<double> series{0.0, 1.0};
  const auto pdf = jamsim::empirical_pdf(series, 2);
  CHECK(pdf[0] == doctest::Approx(0.5));
  CHECK(pdf[1] == doctest::Approx(0.5));

  EmpiricalCdf cdf(series);
  CHECK(cdf.at(0.5) == doctest::Approx(0.5));
  CHECK(cdf.at(-0.1) == 0.0);
  CHECK(cdf.at(1.0) == 1.0);
}

TEST_CASE("cdf of a constant series is a unit step") {
  const std::vector<double> series(50, 0.3);
  EmpiricalCdf cdf(series);
  CHECK(cdf.at(0.29) == 0.0);
  CHECK(cdf.at(0.3) == 1.0);
}

TEST_CASE("log export and import round-trip exactly") {
  MetricsLog log;
  log.meta()["scenario"] = "sra_attack";
  log.meta()["seed"] = "7";
  for (int i = 0; i < 100; ++i)
    log.append(make_record(static_cast<std::uint64_t>(i), i % 16, (i * 3) % 16,
                           (i % 4 == 0) ? (i * 3) % 16 : -1, i % 2 == 0));
  const auto path = std::filesystem::temp_directory_path() / "jamsim_log_roundtrip.tsv";
  jamsim::export_log(log, path);
  CHECK(jamsim::import_log(path) == log);
  std::filesystem::remove(path);
}

TEST_CASE("an empty log exports a valid header-only file") {
  MetricsLog log;
  const auto path = std::filesystem::temp_directory_path() / "jamsim_log_empty.tsv";
  jamsim::export_log(log, path);
  const auto back = jamsim::import_log(path);
  CHECK(back.size() == 0);
  CHECK(back == log);
  std::filesystem::remove(path);
}

TEST_CASE("a version mismatch is rejected on import") {
  const auto path = std::filesystem::temp_directory_path() / "jamsim_log_badver.tsv";
  std::ofstream out(path);
  out << "# jamsim-log v9\nslot\n";
  out.close();
  CHECK_THROWS_AS(jamsim::import_log(path), std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("replay verification accepts consistent logs and flags corrupted ones") {
  MetricsLog log;
  for (int i = 0; i < 200; ++i)
    log.append(make_record(static_cast<std::uint64_t>(i), i % 16, (i * 7) % 16,
                           (i % 3 == 0) ? (i * 7) % 16 : -1, i % 2 == 1));
  auto check = jamsim::verify_log(log, false);
  CHECK(check.checked == 200);
  CHECK(check.mismatches == 0);

  MetricsLog corrupted = log;
  const_cast<SlotRecord&>(corrupted.records()[10]).victim_reward = 0.25;
  check = jamsim::verify_log(corrupted, false);
  CHECK(check.mismatches == 1);
}

TEST_CASE("jam run lengths count maximal runs") {
  MetricsLog log;
  // jams at slots 0,1,2 then 5 then 8,9
  for (int i = 0; i < 10; ++i) {
    const bool jam = (i <= 2) || i == 5 || i == 8 || i == 9;
    log.append(make_record(static_cast<std::uint64_t>(i), 1, 2, jam ? 2 : -1, false));
  }
  const auto runs = jamsim::jam_run_lengths(log);
  CHECK(runs.at(3) == 1);
  CHECK(runs.at(1) == 1);
  CHECK(runs.at(2) == 1);
}

TEST_CASE("mean accuracy and attack ratio respect slot ranges") {
  MetricsLog log;
  for (int i = 0; i < 10; ++i) {
    SlotRecord r = make_record(static_cast<std::uint64_t>(i), 0, -1, -1, i >= 5);
    log.append(r);
  }
  CHECK(jamsim::mean_accuracy(log) == doctest::Approx(0.5));
  CHECK(jamsim::mean_accuracy(log, 5) == doctest::Approx(1.0));
  CHECK(jamsim::mean_accuracy(log, 0, 5) == doctest::Approx(0.0));
  CHECK_THROWS_AS(jamsim::mean_accuracy(log, 20), std::invalid_argument);
  CHECK(jamsim::realized_attack_ratio(log) == 0.0);
}
