#include "jamsim/actor_critic.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace jamsim {

namespace {

std::vector<int> full_layers(int input_size, const std::vector<int>& hidden, int out) {
  std::vector<int> layers;
  layers.reserve(hidden.size() + 2);
  layers.push_back(input_size);
  layers.insert(layers.end(), hidden.begin(), hidden.end());
  layers.push_back(out);
  return layers;
}

void append_u32_le(ParameterBlob& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void append_f64_le(ParameterBlob& b, double d) {
  const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

class BlobReader {
 public:
  explicit BlobReader(const ParameterBlob& b) : b_(b) {}
  std::uint8_t u8() {
    need(1);
    return b_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b_[pos_++]) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b_[pos_++]) << (8 * i);
    return std::bit_cast<double>(v);
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  void need(size_t n) const {
    if (pos_ + n > b_.size()) throw std::runtime_error("ParameterBlob: truncated");
  }
  const ParameterBlob& b_;
  size_t pos_ = 0;
};

void append_network(ParameterBlob& blob, const Mlp& net) {
  append_u32_le(blob, static_cast<std::uint32_t>(net.layer_sizes().size()));
  for (int s : net.layer_sizes()) append_u32_le(blob, static_cast<std::uint32_t>(s));
  for (Eigen::Index i = 0; i < net.param_count(); ++i) append_f64_le(blob, net.params()[i]);
}

void read_network(BlobReader& r, Mlp& net) {
  const std::uint32_t n_layers = r.u32();
  if (n_layers != net.layer_sizes().size())
    throw std::runtime_error("ParameterBlob: architecture mismatch (layer count)");
  for (std::uint32_t i = 0; i < n_layers; ++i) {
    if (static_cast<int>(r.u32()) != net.layer_sizes()[i])
      throw std::runtime_error("ParameterBlob: architecture mismatch (layer size)");
  }
  for (Eigen::Index i = 0; i < net.param_count(); ++i) net.params()[i] = r.f64();
}

}  // namespace

ActorCriticAgent::ActorCriticAgent(int n_actions, int input_size, const AgentConfig& cfg,
                                   std::uint64_t seed)
    : n_actions_(n_actions),
      cfg_(cfg),
      actor_([&] {
        RngStream r(derive_seed(seed, "actor.init"));
        return Mlp(full_layers(input_size, cfg.hidden, n_actions), r);
      }()),
      critic_([&] {
        RngStream r(derive_seed(seed, "critic.init"));
        return Mlp(full_layers(input_size, cfg.hidden, 1), r);
      }()),
      explore_rng_(derive_seed(seed, "explore")) {
  if (n_actions_ <= 0) throw std::invalid_argument("ActorCriticAgent: n_actions must be positive");
  if (cfg_.discount <= 0.0 || cfg_.discount >= 1.0)
    throw std::invalid_argument("ActorCriticAgent: discount must lie in (0,1)");
  scores_.resize(n_actions_);
  dlogits_.resize(n_actions_);
  actor_grad_.resize(actor_.param_count());
  critic_grad_.resize(critic_.param_count());
  value_grad_seed_ = Eigen::VectorXd::Ones(1);
}

void ActorCriticAgent::check_obs(const ObservationMatrix& obs) const {
  if (obs.size() != actor_.input_size())
    throw std::invalid_argument("ActorCriticAgent: observation dimensions do not match network input");
}

void ActorCriticAgent::softmax_from_logits(const Eigen::VectorXd& logits) {
  const double m = logits.maxCoeff();
  scores_ = (logits.array() - m).exp();
  scores_ /= scores_.sum();
}

const Eigen::VectorXd& ActorCriticAgent::policy_scores(const ObservationMatrix& obs) {
  check_obs(obs);
  softmax_from_logits(actor_.forward(obs.flat()));
  return scores_;
}

ActResult ActorCriticAgent::act(const ObservationMatrix& obs, double epsilon) {
  const Eigen::VectorXd& scores = policy_scores(obs);
  int action;
  if (epsilon > 0.0 && explore_rng_.uniform() < epsilon) {
    action = explore_rng_.uniform_int(n_actions_);
  } else {
    action = 0;
    for (int i = 1; i < n_actions_; ++i)
      if (scores[i] > scores[action]) action = i;  // ties keep the lowest index
  }
  return {action, scores};
}

double ActorCriticAgent::value(const ObservationMatrix& obs) {
  check_obs(obs);
  return critic_.forward(obs.flat())[0];
}

double ActorCriticAgent::td_error(double reward, const ObservationMatrix& obs_t,
                                  const ObservationMatrix& obs_next) {
  const double v_next = value(obs_next);
  const double v_t = value(obs_t);
  return reward + cfg_.discount * v_next - v_t;
}

void ActorCriticAgent::update_critic(double delta, const ObservationMatrix& obs_t) {
  if (delta == 0.0) return;
  check_obs(obs_t);
  critic_.forward(obs_t.flat());
  critic_grad_.setZero();
  critic_.backward(value_grad_seed_, critic_grad_);  // grad V(obs_t)
  // d(delta^2)/d(mu) = -2 delta gradV with the bootstrap target held fixed.
  critic_grad_ *= -2.0 * delta;
  if (!critic_grad_.allFinite())
    throw std::runtime_error("ActorCriticAgent: non-finite critic gradient (diverged)");
  critic_.params() -= cfg_.critic_lr * critic_grad_;
}

void ActorCriticAgent::update_actor(double delta, const ObservationMatrix& obs_t, int action) {
  if (action < 0 || action >= n_actions_)
    throw std::out_of_range("ActorCriticAgent::update_actor: action out of range");
  if (delta == 0.0) return;
  check_obs(obs_t);
  softmax_from_logits(actor_.forward(obs_t.flat()));
  dlogits_ = -scores_;
  dlogits_[action] += 1.0;  // d log pi(a) / d logits
  actor_grad_.setZero();
  actor_.backward(dlogits_, actor_grad_);
  if (!actor_grad_.allFinite())
    throw std::runtime_error("ActorCriticAgent: non-finite actor gradient (diverged)");
  actor_.params() += cfg_.actor_lr * delta * actor_grad_;
}

ParameterBlob ActorCriticAgent::snapshot() const {
  ParameterBlob blob;
  blob.reserve(2 + 8 * static_cast<size_t>(actor_.param_count() + critic_.param_count()) + 64);
  blob.push_back(kBlobFormatVersion);
  blob.push_back(2);  // network count: actor, critic
  append_network(blob, actor_);
  append_network(blob, critic_);
  return blob;
}

void ActorCriticAgent::restore(const ParameterBlob& blob) {
  BlobReader r(blob);
  if (r.u8() != kBlobFormatVersion) throw std::runtime_error("ParameterBlob: unsupported format version");
  if (r.u8() != 2) throw std::runtime_error("ParameterBlob: unexpected network count");
  read_network(r, actor_);
  read_network(r, critic_);
  if (!r.done()) throw std::runtime_error("ParameterBlob: trailing bytes");
}

void save_blob(const ParameterBlob& blob, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open checkpoint file for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
  if (!out) throw std::runtime_error("checkpoint write failed: " + path.string());
}

ParameterBlob load_blob(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open checkpoint file: " + path.string());
  const std::streamsize size = in.tellg();
  in.seekg(0);
  ParameterBlob blob(static_cast<size_t>(size));
  in.read(reinterpret_cast<char*>(blob.data()), size);
  if (!in) throw std::runtime_error("checkpoint read failed: " + path.string());
  return blob;
}

}  // namespace jamsim
