#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "jamsim/channel_env.hpp"

using jamsim::ChannelEnv;
using jamsim::TransmitStatus;

TEST_CASE("switch_prob 0 freezes the state") {
  ChannelEnv env(16, 2, 0.0, 123);
  env.set_state_index(5);
  for (int i = 0; i < 1000; ++i) {
    env.advance();
    CHECK(env.state_index() == 5);
  }
}

TEST_CASE("switch_prob 1 advances deterministically") {
  ChannelEnv env(16, 2, 1.0, 123);
  CHECK(env.state_index() == 0);
  for (int expected : {1, 2, 3}) {
    env.advance();
    CHECK(env.state_index() == expected);
  }
}

TEST_CASE("empirical advance fraction tracks switch_prob 0.95") {
  ChannelEnv env(16, 2, 0.95, 7);
  int advances = 0;
  int prev = env.state_index();
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    env.advance();
    if (env.state_index() != prev) ++advances;
    prev = env.state_index();
  }
  CHECK(std::abs(advances / double(n) - 0.95) < 0.01);
}

TEST_CASE("good set is the adjacent pair, with wrap-around") {
  ChannelEnv env(16, 2, 0.0, 1);
  env.set_state_index(0);
  CHECK(env.good_set() == std::vector<int>{0, 1});
  env.set_state_index(15);
  CHECK(env.good_set() == std::vector<int>{0, 15});
  CHECK(env.is_good(15));
  CHECK(env.is_good(0));
  CHECK_FALSE(env.is_good(7));
}

TEST_CASE("permutation maps the good set through the shuffle") {
  ChannelEnv plain(16, 2, 0.0, 1);
  std::vector<int> perm(16);
  for (int i = 0; i < 16; ++i) perm[static_cast<size_t>(i)] = (i * 5 + 3) % 16;
  ChannelEnv shuffled(16, 2, 0.0, 1, jamsim::adjacent_good_set, perm);
  for (int s = 0; s < 16; ++s) {
    plain.set_state_index(s);
    shuffled.set_state_index(s);
    std::vector<int> expected;
    for (int c : plain.good_set()) expected.push_back(perm[static_cast<size_t>(c)]);
    std::sort(expected.begin(), expected.end());
    CHECK(shuffled.good_set() == expected);
  }
}

TEST_CASE("every state has exactly k good channels") {
  ChannelEnv env(16, 2, 0.95, 99);
  for (int i = 0; i < 1000; ++i) {
    const auto v = env.advance();
    CHECK(std::count(v.good.begin(), v.good.end(), true) == 2);
  }
}

TEST_CASE("transmit outcomes") {
  ChannelEnv env(16, 2, 0.0, 1);
  env.set_state_index(4);  // good: {4, 5}

  auto out = env.transmit(4, std::nullopt);
  CHECK(out.status == TransmitStatus::success);
  CHECK(out.was_good_pre_jam);

  out = env.transmit(4, 4);
  CHECK(out.status == TransmitStatus::fail_jammed);
  CHECK(out.was_good_pre_jam);

  out = env.transmit(9, 3);
  CHECK(out.status == TransmitStatus::fail_bad_channel);
  CHECK_FALSE(out.was_good_pre_jam);

  out = env.transmit(9, 9);  // jam wins over the bad state
  CHECK(out.status == TransmitStatus::fail_jammed);
  CHECK_FALSE(out.was_good_pre_jam);

  CHECK_THROWS_AS(env.transmit(16, std::nullopt), std::out_of_range);
  CHECK_THROWS_AS(env.transmit(3, 16), std::out_of_range);
}

TEST_CASE("same seed replays an identical trajectory") {
  ChannelEnv a(16, 2, 0.95, 555);
  ChannelEnv b(16, 2, 0.95, 555);
  for (int i = 0; i < 10000; ++i) {
    a.advance();
    b.advance();
    CHECK(a.state_index() == b.state_index());
  }
}

TEST_CASE("stationary state distribution is uniform") {
  ChannelEnv env(16, 2, 0.95, 2024);
  std::vector<int> counts(16, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    env.advance();
    ++counts[static_cast<size_t>(env.state_index())];
  }
  const double expected = n / 16.0;
  const double sigma = std::sqrt(n * (1.0 / 16) * (15.0 / 16));
  for (int c : counts) CHECK(std::abs(c - expected) < 3 * sigma + 50);
}

TEST_CASE("rejects invalid construction") {
  CHECK_THROWS_AS(ChannelEnv(16, 0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(ChannelEnv(16, 16, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(ChannelEnv(16, 2, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(ChannelEnv(16, 2, 0.5, 1, jamsim::adjacent_good_set,
                             std::vector<int>{0, 1}),
                  std::invalid_argument);
}
