#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace jamsim {

struct SlotRecord {
  std::uint64_t slot = 0;
  std::int32_t victim_action = -1;
  std::int32_t attacker_action = -1;   // -1 when no attacker is present
  std::int32_t jam_channel = -1;       // -1 when no jam was emitted
  std::int32_t imitation_action = -1;  // -1 when no imitation attacker runs
  double victim_reward = 0.0;
  double attacker_reward = 0.0;
  bool success = false;
  bool pre_jam_good = false;
  std::int32_t active_policy = -1;     // orthogonal-defense policy id, else -1
  std::uint8_t attacker_phase = 0;     // 0 none, else AttackerPhase values

  bool operator==(const SlotRecord&) const = default;
};

/// Raw per-slot run log plus free-form metadata; every derived series is
/// recomputable from the records.
class MetricsLog {
 public:
  void append(const SlotRecord& r) { records_.push_back(r); }
  const std::vector<SlotRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  std::map<std::string, std::string>& meta() { return meta_; }
  const std::map<std::string, std::string>& meta() const { return meta_; }

  bool operator==(const MetricsLog&) const = default;

 private:
  std::vector<SlotRecord> records_;
  std::map<std::string, std::string> meta_;
};

// Causal moving average: out[i] averages the last min(i+1, window) samples.
std::vector<double> moving_average(std::span<const double> series, int window);

// Per-slot success flags as doubles, starting at `from_slot`.
std::vector<double> success_series(const MetricsLog& log, std::uint64_t from_slot = 0);

// Probability mass per bin over [0, 1]; values at 1.0 land in the last bin.
std::vector<double> empirical_pdf(std::span<const double> series, int bins);

/// Right-continuous empirical CDF of a sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::span<const double> series);
  double at(double x) const;  // fraction of samples <= x
  const std::vector<double>& sorted_values() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

void export_log(const MetricsLog& log, const std::filesystem::path& path);
MetricsLog import_log(const std::filesystem::path& path);

struct ReplayCheck {
  size_t checked = 0;
  size_t mismatches = 0;
};

// Recomputes every reward and success flag from the recorded actions and
// channel states; mismatches indicate a corrupted or inconsistent log.
ReplayCheck verify_log(const MetricsLog& log, bool partial_reward);

// Lengths of maximal consecutive-jam runs, as length -> count.
std::map<int, int> jam_run_lengths(const MetricsLog& log);

double mean_accuracy(const MetricsLog& log, std::uint64_t from_slot = 0,
                     std::uint64_t to_slot = UINT64_MAX);

// Fraction of slots with an emitted jam, from `from_slot` on.
double realized_attack_ratio(const MetricsLog& log, std::uint64_t from_slot = 0);

}  // namespace jamsim
