#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <vector>

#include "jamsim/rng.hpp"

using jamsim::derive_seed;
using jamsim::RngStream;

TEST_CASE("same seed gives the same stream") {
  RngStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.raw() == b.raw());
}

TEST_CASE("derived streams differ per component name") {
  CHECK(derive_seed(7, "env") != derive_seed(7, "victim"));
  CHECK(derive_seed(7, "env") != derive_seed(8, "env"));
  CHECK(derive_seed(7, "env") == derive_seed(7, "env"));
}

TEST_CASE("uniform stays in [0,1)") {
  RngStream r(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_int covers the full range") {
  RngStream r(5);
  std::array<int, 7> counts{};
  for (int i = 0; i < 70000; ++i) ++counts[static_cast<size_t>(r.uniform_int(7))];
  for (int c : counts) CHECK(c > 8000);  // each bin near 10000
  CHECK_THROWS_AS(r.uniform_int(0), std::invalid_argument);
}

TEST_CASE("sample_discrete follows the distribution") {
  RngStream r(11);
  const std::vector<double> probs{0.5, 0.3, 0.2};
  std::array<int, 3> counts{};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<size_t>(r.sample_discrete(probs))];
  for (size_t i = 0; i < probs.size(); ++i)
    CHECK(std::abs(counts[i] / double(n) - probs[i]) < 0.02);
  CHECK_THROWS_AS(r.sample_discrete({}), std::invalid_argument);
}
