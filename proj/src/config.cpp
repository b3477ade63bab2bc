#include "jamsim/config.hpp"

#include <fstream>
#include <stdexcept>

namespace jamsim {

using nlohmann::json;

Scenario scenario_from_string(const std::string& name) {
  if (name == "no_attack") return Scenario::no_attack;
  if (name == "sra_attack") return Scenario::sra_attack;
  if (name == "budgeted_attack") return Scenario::budgeted_attack;
  if (name == "defense_pid") return Scenario::defense_pid;
  if (name == "defense_imitation") return Scenario::defense_imitation;
  if (name == "defense_orthogonal") return Scenario::defense_orthogonal;
  if (name == "detect_env_change") return Scenario::detect_env_change;
  if (name == "detect_attack") return Scenario::detect_attack;
  throw std::invalid_argument("unknown scenario: " + name);
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::no_attack: return "no_attack";
    case Scenario::sra_attack: return "sra_attack";
    case Scenario::budgeted_attack: return "budgeted_attack";
    case Scenario::defense_pid: return "defense_pid";
    case Scenario::defense_imitation: return "defense_imitation";
    case Scenario::defense_orthogonal: return "defense_orthogonal";
    case Scenario::detect_env_change: return "detect_env_change";
    case Scenario::detect_attack: return "detect_attack";
  }
  return "unknown";
}

ChannelEnv make_env(const EnvConfig& cfg, std::uint64_t seed) {
  if (cfg.mapping != "adjacent")
    throw std::invalid_argument("unknown good-set mapping: " + cfg.mapping);
  return ChannelEnv(cfg.n_channels, cfg.n_good, cfg.switch_prob, seed, adjacent_good_set,
                    cfg.permutation);
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.pid = default_pid_gains(cfg.env.n_channels);
  cfg.imitation.probs = default_imitation_probs(cfg.env.n_channels);
  return cfg;
}

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void read_agent(const json& j, AgentConfig& a) {
  a.hidden = j.value("hidden", a.hidden);
  a.actor_lr = j.value("actor_lr", a.actor_lr);
  a.critic_lr = j.value("critic_lr", a.critic_lr);
  a.discount = j.value("discount", a.discount);
}

json write_agent(const AgentConfig& a) {
  return {{"hidden", a.hidden},
          {"actor_lr", a.actor_lr},
          {"critic_lr", a.critic_lr},
          {"discount", a.discount}};
}

ImitationRewardVariant variant_from_string(const std::string& s) {
  if (s == "match") return ImitationRewardVariant::match;
  if (s == "true_attacker") return ImitationRewardVariant::true_attacker;
  if (s == "good_indicator") return ImitationRewardVariant::good_indicator;
  throw std::invalid_argument("unknown imitation reward variant: " + s);
}

const char* variant_to_string(ImitationRewardVariant v) {
  switch (v) {
    case ImitationRewardVariant::match: return "match";
    case ImitationRewardVariant::true_attacker: return "true_attacker";
    case ImitationRewardVariant::good_indicator: return "good_indicator";
  }
  return "unknown";
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg = default_config();

  if (j.contains("scenario")) cfg.scenario = scenario_from_string(j.at("scenario").get<std::string>());

  if (j.contains("environment")) {
    const json& e = j.at("environment");
    cfg.env.n_channels = e.value("n_channels", cfg.env.n_channels);
    cfg.env.n_good = e.value("n_good", cfg.env.n_good);
    cfg.env.switch_prob = e.value("switch_prob", cfg.env.switch_prob);
    cfg.env.mapping = e.value("mapping", cfg.env.mapping);
    if (e.contains("permutation") && !e.at("permutation").is_null())
      cfg.env.permutation = e.at("permutation").get<std::vector<int>>();
  }

  // Dimension-dependent defaults follow the (possibly overridden) channel count.
  cfg.victim.n_channels = cfg.env.n_channels;
  cfg.attacker.n_channels = cfg.env.n_channels;
  cfg.imitation.n_channels = cfg.env.n_channels;
  cfg.pid = default_pid_gains(cfg.env.n_channels);
  cfg.imitation.probs = default_imitation_probs(cfg.env.n_channels);

  if (j.contains("victim")) {
    const json& v = j.at("victim");
    cfg.victim.memory_depth = v.value("memory_depth", cfg.victim.memory_depth);
    cfg.victim.epsilon = v.value("epsilon", cfg.victim.epsilon);
    if (v.contains("partial_reward")) cfg.victim.partial_reward = v.at("partial_reward").get<bool>();
    if (v.contains("agent")) read_agent(v.at("agent"), cfg.victim.agent);
  }
  // The partial-reward assumption is on by default only for the PID defense.
  if (cfg.scenario == Scenario::defense_pid &&
      (!j.contains("victim") || !j.at("victim").contains("partial_reward")))
    cfg.victim.partial_reward = true;

  if (j.contains("attacker")) {
    const json& a = j.at("attacker");
    cfg.attacker.memory_depth = a.value("memory_depth", cfg.attacker.memory_depth);
    cfg.attacker.epsilon = a.value("epsilon", cfg.attacker.epsilon);
    if (a.contains("agent")) read_agent(a.at("agent"), cfg.attacker.agent);
    if (a.contains("sra")) {
      const json& s = a.at("sra");
      cfg.attacker.sra.cycle_length = s.value("cycle_length", cfg.attacker.sra.cycle_length);
      cfg.attacker.sra.retrain_length = s.value("retrain_length", cfg.attacker.sra.retrain_length);
      cfg.attacker.sra.freeze_threshold = s.value("freeze_threshold", cfg.attacker.sra.freeze_threshold);
      cfg.attacker.sra.accuracy_window = s.value("accuracy_window", cfg.attacker.sra.accuracy_window);
    }
    if (a.contains("budget")) {
      const json& b = a.at("budget");
      cfg.attacker.budget.enabled = b.value("enabled", cfg.attacker.budget.enabled);
      cfg.attacker.budget.theta = b.value("theta", cfg.attacker.budget.theta);
      cfg.attacker.budget.theta_u = b.value("theta_u", cfg.attacker.budget.theta_u);
      cfg.attacker.budget.period = b.value("period", cfg.attacker.budget.period);
    }
  }

  if (j.contains("imitation")) {
    const json& m = j.at("imitation");
    cfg.imitation.memory_depth = m.value("memory_depth", cfg.imitation.memory_depth);
    cfg.imitation.epsilon = m.value("epsilon", cfg.imitation.epsilon);
    if (m.contains("agent")) read_agent(m.at("agent"), cfg.imitation.agent);
    if (m.contains("probs")) cfg.imitation.probs = m.at("probs").get<std::vector<double>>();
    if (m.contains("reward_variant"))
      cfg.imitation.variant = variant_from_string(m.at("reward_variant").get<std::string>());
  }

  if (j.contains("pid")) {
    const json& p = j.at("pid");
    if (p.contains("base_probs")) cfg.pid.base_probs = to_eigen(p.at("base_probs").get<std::vector<double>>());
    if (p.contains("kp")) cfg.pid.kp = to_eigen(p.at("kp").get<std::vector<double>>());
    if (p.contains("ki")) cfg.pid.ki = to_eigen(p.at("ki").get<std::vector<double>>());
    if (p.contains("kd")) cfg.pid.kd = to_eigen(p.at("kd").get<std::vector<double>>());
    cfg.pid.short_window = p.value("short_window", cfg.pid.short_window);
    cfg.pid.long_window = p.value("long_window", cfg.pid.long_window);
    cfg.pid.diff_window = p.value("diff_window", cfg.pid.diff_window);
  }

  if (j.contains("orthogonal")) {
    const json& o = j.at("orthogonal");
    cfg.ortho.order_max = o.value("order_max", cfg.ortho.order_max);
    cfg.ortho.decay = o.value("decay", cfg.ortho.decay);
    cfg.ortho.reg_weight = o.value("reg_weight", cfg.ortho.reg_weight);
    cfg.ortho.explore_eps = o.value("explore_eps", cfg.ortho.explore_eps);
    cfg.ortho.explore_period = o.value("explore_period", cfg.ortho.explore_period);
    cfg.ortho.listen_period = o.value("listen_period", cfg.ortho.listen_period);
    cfg.ortho.max_iterations = o.value("max_iterations", cfg.ortho.max_iterations);
    cfg.ortho.corr_orders = o.value("corr_orders", cfg.ortho.corr_orders);
    cfg.ortho.correlation_target_ratio =
        o.value("correlation_target_ratio", cfg.ortho.correlation_target_ratio);
    cfg.ortho.lr_boost = o.value("lr_boost", cfg.ortho.lr_boost);
    cfg.ortho.switch_threshold = o.value("switch_threshold", cfg.ortho.switch_threshold);
    cfg.ortho.switch_period = o.value("switch_period", cfg.ortho.switch_period);
  }

  if (j.contains("detector")) {
    const json& d = j.at("detector");
    cfg.detector.probe_duration = d.value("probe_duration", cfg.detector.probe_duration);
    cfg.detector.recovery_floor = d.value("recovery_floor", cfg.detector.recovery_floor);
    cfg.detector.collapse_ceiling = d.value("collapse_ceiling", cfg.detector.collapse_ceiling);
    cfg.detector.trigger_drop = d.value("trigger_drop", cfg.detector.trigger_drop);
    cfg.detector.grace_window = d.value("grace_window", cfg.detector.grace_window);
  }

  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    cfg.schedule.attack_start = s.value("attack_start", cfg.schedule.attack_start);
    cfg.schedule.defense_start = s.value("defense_start", cfg.schedule.defense_start);
  }

  if (j.contains("run")) {
    const json& r = j.at("run");
    cfg.run.horizon = r.value("horizon", cfg.run.horizon);
    cfg.run.seed = r.value("seed", cfg.run.seed);
    cfg.run.moving_average_window = r.value("moving_average_window", cfg.run.moving_average_window);
    cfg.run.pdf_bins = r.value("pdf_bins", cfg.run.pdf_bins);
  }

  if (j.contains("pretrain")) {
    const json& p = j.at("pretrain");
    cfg.pretrain.victim_slots = p.value("victim_slots", cfg.pretrain.victim_slots);
    cfg.pretrain.attacker_slots = p.value("attacker_slots", cfg.pretrain.attacker_slots);
    cfg.pretrain.victim_train_epsilon =
        p.value("victim_train_epsilon", cfg.pretrain.victim_train_epsilon);
  }

  if (j.contains("checkpoints")) {
    const json& c = j.at("checkpoints");
    cfg.checkpoints.victim = c.value("victim", cfg.checkpoints.victim);
    cfg.checkpoints.attacker = c.value("attacker", cfg.checkpoints.attacker);
    cfg.checkpoints.policy1 = c.value("policy1", cfg.checkpoints.policy1);
    cfg.checkpoints.policy2 = c.value("policy2", cfg.checkpoints.policy2);
  }

  cfg.defense_epsilon = j.value("defense_epsilon", cfg.defense_epsilon);

  validate_config(cfg);
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["scenario"] = to_string(cfg.scenario);
  j["environment"] = {{"n_channels", cfg.env.n_channels},
                      {"n_good", cfg.env.n_good},
                      {"switch_prob", cfg.env.switch_prob},
                      {"mapping", cfg.env.mapping},
                      {"permutation", nullptr}};
  if (cfg.env.permutation) j["environment"]["permutation"] = *cfg.env.permutation;
  j["victim"] = {{"memory_depth", cfg.victim.memory_depth},
                 {"epsilon", cfg.victim.epsilon},
                 {"partial_reward", cfg.victim.partial_reward},
                 {"agent", write_agent(cfg.victim.agent)}};
  j["attacker"] = {{"memory_depth", cfg.attacker.memory_depth},
                   {"epsilon", cfg.attacker.epsilon},
                   {"agent", write_agent(cfg.attacker.agent)},
                   {"sra",
                    {{"cycle_length", cfg.attacker.sra.cycle_length},
                     {"retrain_length", cfg.attacker.sra.retrain_length},
                     {"freeze_threshold", cfg.attacker.sra.freeze_threshold},
                     {"accuracy_window", cfg.attacker.sra.accuracy_window}}},
                   {"budget",
                    {{"enabled", cfg.attacker.budget.enabled},
                     {"theta", cfg.attacker.budget.theta},
                     {"theta_u", cfg.attacker.budget.theta_u},
                     {"period", cfg.attacker.budget.period}}}};
  j["imitation"] = {{"memory_depth", cfg.imitation.memory_depth},
                    {"epsilon", cfg.imitation.epsilon},
                    {"agent", write_agent(cfg.imitation.agent)},
                    {"probs", cfg.imitation.probs},
                    {"reward_variant", variant_to_string(cfg.imitation.variant)}};
  j["pid"] = {{"base_probs", to_std(cfg.pid.base_probs)}, {"kp", to_std(cfg.pid.kp)},
              {"ki", to_std(cfg.pid.ki)},                 {"kd", to_std(cfg.pid.kd)},
              {"short_window", cfg.pid.short_window},     {"long_window", cfg.pid.long_window},
              {"diff_window", cfg.pid.diff_window}};
  j["orthogonal"] = {{"order_max", cfg.ortho.order_max},
                     {"decay", cfg.ortho.decay},
                     {"reg_weight", cfg.ortho.reg_weight},
                     {"explore_eps", cfg.ortho.explore_eps},
                     {"explore_period", cfg.ortho.explore_period},
                     {"listen_period", cfg.ortho.listen_period},
                     {"max_iterations", cfg.ortho.max_iterations},
                     {"corr_orders", cfg.ortho.corr_orders},
                     {"correlation_target_ratio", cfg.ortho.correlation_target_ratio},
                     {"lr_boost", cfg.ortho.lr_boost},
                     {"switch_threshold", cfg.ortho.switch_threshold},
                     {"switch_period", cfg.ortho.switch_period}};
  j["detector"] = {{"probe_duration", cfg.detector.probe_duration},
                   {"recovery_floor", cfg.detector.recovery_floor},
                   {"collapse_ceiling", cfg.detector.collapse_ceiling},
                   {"trigger_drop", cfg.detector.trigger_drop},
                   {"grace_window", cfg.detector.grace_window}};
  j["schedule"] = {{"attack_start", cfg.schedule.attack_start},
                   {"defense_start", cfg.schedule.defense_start}};
  j["run"] = {{"horizon", cfg.run.horizon},
              {"seed", cfg.run.seed},
              {"moving_average_window", cfg.run.moving_average_window},
              {"pdf_bins", cfg.run.pdf_bins}};
  j["pretrain"] = {{"victim_slots", cfg.pretrain.victim_slots},
                   {"attacker_slots", cfg.pretrain.attacker_slots},
                   {"victim_train_epsilon", cfg.pretrain.victim_train_epsilon}};
  j["checkpoints"] = {{"victim", cfg.checkpoints.victim},
                      {"attacker", cfg.checkpoints.attacker},
                      {"policy1", cfg.checkpoints.policy1},
                      {"policy2", cfg.checkpoints.policy2}};
  j["defense_epsilon"] = cfg.defense_epsilon;
  return j;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path.string());
  json j;
  in >> j;
  return config_from_json(j);
}

void save_config_file(const ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open config file for writing: " + path.string());
  out << config_to_json(cfg).dump(2) << '\n';
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.env.n_good < 1 || cfg.env.n_good >= cfg.env.n_channels)
    throw std::invalid_argument("config: need 1 <= n_good < n_channels");
  if (cfg.schedule.attack_start >= cfg.schedule.defense_start)
    throw std::invalid_argument("config: schedule offsets must be strictly increasing");
  if (cfg.run.horizon <= cfg.schedule.defense_start)
    throw std::invalid_argument("config: horizon must exceed all schedule offsets");
  validate_pid_gains(cfg.pid);
  validate_imitation_probs(cfg.imitation.probs);
  if (cfg.detector.collapse_ceiling >= cfg.detector.recovery_floor)
    throw std::invalid_argument("config: collapse_ceiling must lie below recovery_floor");
}

}  // namespace jamsim
