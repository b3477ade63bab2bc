#include "jamsim/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "jamsim/attacker.hpp"
#include "jamsim/victim.hpp"

namespace jamsim {

namespace {

constexpr char kLogHeader[] = "# jamsim-log v1";
constexpr char kColumns[] =
    "slot\tvictim_action\tattacker_action\tjam_channel\timitation_action\tvictim_reward\t"
    "attacker_reward\tsuccess\tpre_jam_good\tactive_policy\tattacker_phase";

std::string format_double(double d) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return {buf, ptr};
}

double parse_double(const std::string& s) {
  double d = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("log import: malformed number '" + s + "'");
  return d;
}

long long parse_int(const std::string& s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("log import: malformed integer '" + s + "'");
  return v;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

std::vector<double> moving_average(std::span<const double> series, int window) {
  if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
  if (series.empty()) throw std::invalid_argument("moving_average: empty series");
  std::vector<double> out(series.size());
  double running = 0.0;
  for (size_t i = 0; i < series.size(); ++i) {
    running += series[i];
    if (i >= static_cast<size_t>(window)) running -= series[i - static_cast<size_t>(window)];
    const size_t n = std::min(i + 1, static_cast<size_t>(window));
    out[i] = running / static_cast<double>(n);
  }
  return out;
}

std::vector<double> success_series(const MetricsLog& log, std::uint64_t from_slot) {
  std::vector<double> out;
  out.reserve(log.size());
  for (const auto& r : log.records())
    if (r.slot >= from_slot) out.push_back(r.success ? 1.0 : 0.0);
  return out;
}

std::vector<double> empirical_pdf(std::span<const double> series, int bins) {
  if (bins < 1) throw std::invalid_argument("empirical_pdf: bins must be >= 1");
  if (series.empty()) throw std::invalid_argument("empirical_pdf: empty series");
  std::vector<double> pdf(static_cast<size_t>(bins), 0.0);
  for (double v : series) {
    int b = static_cast<int>(v * bins);
    b = std::clamp(b, 0, bins - 1);
    pdf[static_cast<size_t>(b)] += 1.0;
  }
  for (double& p : pdf) p /= static_cast<double>(series.size());
  return pdf;
}

EmpiricalCdf::EmpiricalCdf(std::span<const double> series)
    : sorted_(series.begin(), series.end()) {
  if (sorted_.empty()) throw std::invalid_argument("EmpiricalCdf: empty series");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::at(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

void export_log(const MetricsLog& log, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open log file for writing: " + path.string());
  out << kLogHeader << '\n';
  for (const auto& [k, v] : log.meta()) out << "#meta " << k << '=' << v << '\n';
  out << kColumns << '\n';
  for (const auto& r : log.records()) {
    out << r.slot << '\t' << r.victim_action << '\t' << r.attacker_action << '\t' << r.jam_channel
        << '\t' << r.imitation_action << '\t' << format_double(r.victim_reward) << '\t'
        << format_double(r.attacker_reward) << '\t' << int(r.success) << '\t'
        << int(r.pre_jam_good) << '\t' << r.active_policy << '\t' << int(r.attacker_phase) << '\n';
  }
  if (!out) throw std::runtime_error("log write failed: " + path.string());
}

MetricsLog import_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open log file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kLogHeader)
    throw std::runtime_error("log import: unknown format or version");
  MetricsLog log;
  bool saw_columns = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("#meta ", 0) == 0) {
      const std::string kv = line.substr(6);
      const size_t eq = kv.find('=');
      if (eq == std::string::npos) throw std::runtime_error("log import: malformed meta line");
      log.meta()[kv.substr(0, eq)] = kv.substr(eq + 1);
      continue;
    }
    if (!saw_columns) {
      if (line != kColumns) throw std::runtime_error("log import: unexpected column header");
      saw_columns = true;
      continue;
    }
    const auto f = split_tabs(line);
    if (f.size() != 11) throw std::runtime_error("log import: wrong field count");
    SlotRecord r;
    r.slot = static_cast<std::uint64_t>(parse_int(f[0]));
    r.victim_action = static_cast<std::int32_t>(parse_int(f[1]));
    r.attacker_action = static_cast<std::int32_t>(parse_int(f[2]));
    r.jam_channel = static_cast<std::int32_t>(parse_int(f[3]));
    r.imitation_action = static_cast<std::int32_t>(parse_int(f[4]));
    r.victim_reward = parse_double(f[5]);
    r.attacker_reward = parse_double(f[6]);
    r.success = parse_int(f[7]) != 0;
    r.pre_jam_good = parse_int(f[8]) != 0;
    r.active_policy = static_cast<std::int32_t>(parse_int(f[9]));
    r.attacker_phase = static_cast<std::uint8_t>(parse_int(f[10]));
    log.append(r);
  }
  if (!saw_columns) throw std::runtime_error("log import: missing column header");
  return log;
}

ReplayCheck verify_log(const MetricsLog& log, bool partial_reward) {
  ReplayCheck check;
  for (const auto& r : log.records()) {
    if (r.victim_action < 0) continue;
    ++check.checked;
    bool ok = true;

    const bool jammed = r.jam_channel >= 0 && r.jam_channel == r.victim_action;
    const bool expect_success = r.pre_jam_good && !jammed;
    if (r.success != expect_success) ok = false;

    TransmissionOutcome outcome;
    if (jammed)
      outcome = {TransmitStatus::fail_jammed, r.pre_jam_good};
    else if (r.pre_jam_good)
      outcome = {TransmitStatus::success, true};
    else
      outcome = {TransmitStatus::fail_bad_channel, false};
    if (r.victim_reward != victim_reward(outcome, partial_reward)) ok = false;

    if (r.attacker_action >= 0) {
      if (r.attacker_reward != attacker_reward(r.attacker_action, r.victim_action, r.pre_jam_good))
        ok = false;
      // A jam, when emitted, is the attacker's own channel, and only the
      // attacking phases may emit one.
      if (r.jam_channel >= 0 && r.jam_channel != r.attacker_action) ok = false;
      const auto phase = static_cast<AttackerPhase>(r.attacker_phase);
      if (r.jam_channel >= 0 && phase != AttackerPhase::attack &&
          phase != AttackerPhase::frozen_attack)
        ok = false;
    } else if (r.jam_channel >= 0) {
      ok = false;
    }

    if (!ok) ++check.mismatches;
  }
  return check;
}

std::map<int, int> jam_run_lengths(const MetricsLog& log) {
  std::map<int, int> runs;
  int current = 0;
  for (const auto& r : log.records()) {
    if (r.jam_channel >= 0) {
      ++current;
    } else if (current > 0) {
      ++runs[current];
      current = 0;
    }
  }
  if (current > 0) ++runs[current];
  return runs;
}

double mean_accuracy(const MetricsLog& log, std::uint64_t from_slot, std::uint64_t to_slot) {
  size_t n = 0;
  size_t hits = 0;
  for (const auto& r : log.records()) {
    if (r.slot < from_slot || r.slot >= to_slot) continue;
    ++n;
    hits += r.success ? 1 : 0;
  }
  if (n == 0) throw std::invalid_argument("mean_accuracy: empty slot range");
  return static_cast<double>(hits) / static_cast<double>(n);
}

double realized_attack_ratio(const MetricsLog& log, std::uint64_t from_slot) {
  size_t n = 0;
  size_t jams = 0;
  for (const auto& r : log.records()) {
    if (r.slot < from_slot) continue;
    ++n;
    jams += r.jam_channel >= 0 ? 1 : 0;
  }
  if (n == 0) throw std::invalid_argument("realized_attack_ratio: empty slot range");
  return static_cast<double>(jams) / static_cast<double>(n);
}

}  // namespace jamsim
