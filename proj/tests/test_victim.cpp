#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jamsim/channel_env.hpp"
#include "jamsim/victim.hpp"

using jamsim::ChannelEnv;
using jamsim::TransmissionOutcome;
using jamsim::TransmitStatus;
using jamsim::Victim;
using jamsim::VictimConfig;

namespace {

VictimConfig small_victim() {
  VictimConfig cfg;
  cfg.n_channels = 4;
  cfg.memory_depth = 3;
  cfg.agent.hidden = {8};
  return cfg;
}

}  // namespace

TEST_CASE("reward mapping covers all outcome cases") {
  const TransmissionOutcome ok{TransmitStatus::success, true};
  const TransmissionOutcome bad{TransmitStatus::fail_bad_channel, false};
  const TransmissionOutcome jammed_good{TransmitStatus::fail_jammed, true};
  const TransmissionOutcome jammed_bad{TransmitStatus::fail_jammed, false};

  CHECK(jamsim::victim_reward(ok, false) == 1.0);
  CHECK(jamsim::victim_reward(bad, false) == -1.0);
  CHECK(jamsim::victim_reward(jammed_good, false) == -1.0);
  CHECK(jamsim::victim_reward(jammed_bad, false) == -1.0);

  // Partial-reward variant: a jammed-but-good pick earns +0.5.
  CHECK(jamsim::victim_reward(ok, true) == 1.0);
  CHECK(jamsim::victim_reward(jammed_good, true) == 0.5);
  CHECK(jamsim::victim_reward(jammed_bad, true) == -1.0);
  CHECK(jamsim::victim_reward(bad, true) == -1.0);
}

TEST_CASE("successful slot writes the reward at the chosen row") {
  Victim v(small_victim(), 1);
  v.learn(2, {TransmitStatus::success, true});
  CHECK(v.memory().matrix()(2, 0) == 1.0);
  for (int i = 0; i < 4; ++i)
    if (i != 2) CHECK(v.memory().matrix()(i, 0) == 0.0);
}

TEST_CASE("memory is a strict FIFO of depth M") {
  Victim v(small_victim(), 2);
  // Mark each slot with a distinct channel; after M slots the initial zero
  // columns are all gone and the newest-first order holds.
  v.learn(0, {TransmitStatus::success, true});
  v.learn(1, {TransmitStatus::fail_bad_channel, false});
  v.learn(2, {TransmitStatus::success, true});
  const auto& m = v.memory().matrix();
  CHECK(m(2, 0) == 1.0);
  CHECK(m(1, 1) == -1.0);
  CHECK(m(0, 2) == 1.0);
  // One more slot pushes the first observation out.
  v.learn(3, {TransmitStatus::success, true});
  CHECK(v.memory().matrix()(0, 2) == 0.0);
  CHECK(v.memory().matrix()(1, 2) == -1.0);
}

TEST_CASE("accuracy over the window") {
  Victim v(small_victim(), 3);
  for (int i = 0; i < 10; ++i) v.learn(0, {TransmitStatus::success, true});
  CHECK(v.accuracy(10) == 1.0);
  for (int i = 0; i < 10; ++i)
    v.learn(0, i % 2 == 0 ? TransmissionOutcome{TransmitStatus::success, true}
                          : TransmissionOutcome{TransmitStatus::fail_bad_channel, false});
  CHECK(v.accuracy(10) == 0.5);
  CHECK_THROWS_AS(v.accuracy(0), std::invalid_argument);
}

TEST_CASE("mean reward stays within [-1, 1] on a random run") {
  VictimConfig cfg = small_victim();
  cfg.n_channels = 16;
  cfg.memory_depth = 4;
  Victim v(cfg, 4);
  ChannelEnv env(16, 2, 0.95, 4);
  double sum = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    env.advance();
    sum += victim_step(v, env, (i % 3 == 0) ? std::optional<int>(i % 16) : std::nullopt).reward;
  }
  const double mean = sum / n;
  CHECK(mean >= -1.0);
  CHECK(mean <= 1.0);
}

TEST_CASE("rank_channels sorts descending with stable ties") {
  const std::vector<double> scores{0.1, 0.4, 0.4, 0.05, 0.05};
  const auto ranked = jamsim::rank_channels(scores);
  CHECK(ranked == std::vector<int>{1, 2, 0, 3, 4});
}

TEST_CASE("learning can be frozen") {
  Victim v(small_victim(), 9);
  v.set_learning_enabled(false);
  const auto before = v.snapshot();
  for (int i = 0; i < 20; ++i) v.learn(i % 4, {TransmitStatus::success, true});
  CHECK(v.snapshot() == before);
  v.set_learning_enabled(true);
  v.learn(0, {TransmitStatus::success, true});
  CHECK(v.snapshot() != before);
}
