#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "jamsim/config.hpp"
#include "jamsim/detector.hpp"
#include "jamsim/harness.hpp"
#include "jamsim/metrics.hpp"

namespace fs = std::filesystem;
using jamsim::ExperimentConfig;
using nlohmann::json;

namespace {

ExperimentConfig load_or_default(const std::string& config_path) {
  if (config_path.empty()) return jamsim::default_config();
  return jamsim::load_config_file(config_path);
}

void apply_overrides(ExperimentConfig& cfg, const std::optional<std::string>& scenario,
                     const std::optional<std::uint64_t>& seed, const std::optional<long>& horizon) {
  if (scenario) cfg.scenario = jamsim::scenario_from_string(*scenario);
  if (seed) cfg.run.seed = *seed;
  if (horizon) cfg.run.horizon = *horizon;
}

jamsim::Checkpoints load_checkpoints(const ExperimentConfig& cfg) {
  jamsim::Checkpoints c;
  if (!cfg.checkpoints.victim.empty()) c.victim = jamsim::load_blob(cfg.checkpoints.victim);
  if (!cfg.checkpoints.attacker.empty()) c.attacker = jamsim::load_blob(cfg.checkpoints.attacker);
  if (!cfg.checkpoints.policy1.empty()) c.policy1 = jamsim::load_blob(cfg.checkpoints.policy1);
  if (!cfg.checkpoints.policy2.empty()) c.policy2 = jamsim::load_blob(cfg.checkpoints.policy2);
  return c;
}

void write_series(const fs::path& path, const std::vector<double>& xs,
                  const std::vector<double>& ys, const char* xname, const char* yname) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out << xname << '\t' << yname << '\n';
  for (size_t i = 0; i < ys.size(); ++i) out << xs[i] << '\t' << ys[i] << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial jamming / dynamic channel-access simulator"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (defaults are built in)");

  // train-victim
  auto* tv = app.add_subcommand("train-victim", "Pre-train the channel-access victim");
  std::uint64_t tv_seed = 1;
  long tv_slots = 0;
  std::string tv_out = "victim.ckpt";
  tv->add_option("--seed", tv_seed, "Training seed");
  tv->add_option("--slots", tv_slots, "Training slots (default from config)");
  tv->add_option("--out", tv_out, "Checkpoint output path")->required();

  // train-attacker
  auto* ta = app.add_subcommand("train-attacker", "Pre-train the jammer in listening mode");
  std::uint64_t ta_seed = 1;
  long ta_slots = 0;
  std::string ta_victim, ta_out = "attacker.ckpt";
  ta->add_option("--seed", ta_seed, "Training seed");
  ta->add_option("--slots", ta_slots, "Training slots (default from config)");
  ta->add_option("--victim", ta_victim, "Trained victim checkpoint")->required();
  ta->add_option("--out", ta_out, "Checkpoint output path")->required();

  // train-orthogonal
  auto* to = app.add_subcommand("train-orthogonal", "Train the orthogonal policy pair");
  std::uint64_t to_seed = 1;
  std::string to_victim, to_prefix = "ortho";
  to->add_option("--seed", to_seed, "Training seed");
  to->add_option("--victim", to_victim, "Trained victim checkpoint")->required();
  to->add_option("--out-prefix", to_prefix, "Outputs <prefix>.policy1/.policy2/.report.tsv");

  // run
  auto* run = app.add_subcommand("run", "Run a scenario and export its log");
  std::optional<std::string> run_scenario_name;
  std::optional<std::uint64_t> run_seed;
  std::optional<long> run_horizon;
  std::string run_out = "run.log";
  std::string run_victim, run_attacker, run_policy1, run_policy2;
  run->add_option("--scenario", run_scenario_name, "Scenario name");
  run->add_option("--seed", run_seed, "Run seed");
  run->add_option("--horizon", run_horizon, "Total slots");
  run->add_option("--out", run_out, "Log output path");
  run->add_option("--victim", run_victim, "Victim checkpoint (overrides config)");
  run->add_option("--attacker", run_attacker, "Attacker checkpoint (overrides config)");
  run->add_option("--policy1", run_policy1, "Orthogonal policy 1 checkpoint");
  run->add_option("--policy2", run_policy2, "Orthogonal policy 2 checkpoint");

  // detect
  auto* det = app.add_subcommand("detect", "Classify a probe log as attack vs environment change");
  std::string det_log;
  long det_from = -1;
  det->add_option("--log", det_log, "Exported run log")->required();
  det->add_option("--from-slot", det_from, "Probe start (default: defense_start from the log)");

  // report
  auto* rep = app.add_subcommand("report", "Emit moving-average / PDF / CDF series from a log");
  std::string rep_log, rep_prefix = "report";
  long rep_from = 0;
  rep->add_option("--log", rep_log, "Exported run log")->required();
  rep->add_option("--out-prefix", rep_prefix, "Output prefix");
  rep->add_option("--from-slot", rep_from, "First slot of the analyzed series");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg = load_or_default(config_path);

    if (tv->parsed()) {
      const long slots = tv_slots > 0 ? tv_slots : cfg.pretrain.victim_slots;
      const auto blob = jamsim::train_victim(cfg, tv_seed, slots, &std::cerr);
      jamsim::save_blob(blob, tv_out);
      std::cout << "wrote " << tv_out << '\n';
    } else if (ta->parsed()) {
      const long slots = ta_slots > 0 ? ta_slots : cfg.pretrain.attacker_slots;
      const auto victim = jamsim::load_blob(ta_victim);
      const auto blob = jamsim::train_attacker(cfg, victim, ta_seed, slots, &std::cerr);
      jamsim::save_blob(blob, ta_out);
      std::cout << "wrote " << ta_out << '\n';
    } else if (to->parsed()) {
      const auto victim = jamsim::load_blob(to_victim);
      const auto env = jamsim::make_env(cfg.env, 0);
      const auto pair =
          jamsim::train_orthogonal_pair(victim, cfg.victim, env, cfg.ortho, to_seed);
      jamsim::save_blob(pair.policy1, to_prefix + ".policy1");
      jamsim::save_blob(pair.policy2, to_prefix + ".policy2");
      jamsim::write_ortho_report(pair.report, to_prefix + ".report.tsv");
      std::cout << "wrote " << to_prefix << ".policy1 " << to_prefix << ".policy2 " << to_prefix
                << ".report.tsv (converged=" << (pair.report.converged ? "yes" : "no") << ")\n";
      if (!pair.report.converged)
        std::cerr << "warning: correlation target not reached; best pair returned\n";
    } else if (run->parsed()) {
      apply_overrides(cfg, run_scenario_name, run_seed, run_horizon);
      if (!run_victim.empty()) cfg.checkpoints.victim = run_victim;
      if (!run_attacker.empty()) cfg.checkpoints.attacker = run_attacker;
      if (!run_policy1.empty()) cfg.checkpoints.policy1 = run_policy1;
      if (!run_policy2.empty()) cfg.checkpoints.policy2 = run_policy2;
      const auto log = jamsim::run_scenario(cfg, load_checkpoints(cfg));
      jamsim::export_log(log, run_out);
      const double acc = jamsim::mean_accuracy(log);
      std::cout << "wrote " << run_out << " (slots=" << log.size() << ", mean accuracy=" << acc;
      if (auto it = log.meta().find("detector.decision"); it != log.meta().end())
        std::cout << ", detector=" << it->second;
      std::cout << ")\n";
    } else if (det->parsed()) {
      const auto log = jamsim::import_log(det_log);
      long from = det_from;
      if (from < 0) {
        const auto it = log.meta().find("defense_start");
        if (it == log.meta().end())
          throw std::runtime_error("log has no defense_start meta; pass --from-slot");
        from = std::stol(it->second);
      }
      const auto succ = jamsim::success_series(log, static_cast<std::uint64_t>(from));
      const auto ma = jamsim::moving_average(succ, cfg.run.moving_average_window);
      const auto verdict = jamsim::detect(ma, cfg.detector);
      json out = {{"decision", jamsim::to_string(verdict)}, {"from_slot", from}};
      std::cout << out.dump() << '\n';
    } else if (rep->parsed()) {
      const auto log = jamsim::import_log(rep_log);
      const auto succ = jamsim::success_series(log, static_cast<std::uint64_t>(rep_from));
      const auto ma = jamsim::moving_average(succ, cfg.run.moving_average_window);
      std::vector<double> slots(ma.size());
      for (size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<double>(rep_from) + static_cast<double>(i);
      write_series(rep_prefix + ".accuracy.tsv", slots, ma, "slot", "moving_accuracy");

      const auto pdf = jamsim::empirical_pdf(ma, cfg.run.pdf_bins);
      std::vector<double> centers(pdf.size());
      for (size_t i = 0; i < pdf.size(); ++i)
        centers[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(pdf.size());
      write_series(rep_prefix + ".pdf.tsv", centers, pdf, "accuracy", "probability");

      jamsim::EmpiricalCdf cdf(ma);
      std::vector<double> xs, ys;
      for (int i = 0; i <= 100; ++i) {
        xs.push_back(i / 100.0);
        ys.push_back(cdf.at(i / 100.0));
      }
      write_series(rep_prefix + ".cdf.tsv", xs, ys, "accuracy", "cdf");
      std::cout << "wrote " << rep_prefix << ".accuracy.tsv " << rep_prefix << ".pdf.tsv "
                << rep_prefix << ".cdf.tsv\n";
    }
  } catch (const std::exception& e) {
    json err = {{"error", e.what()}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
  return 0;
}
