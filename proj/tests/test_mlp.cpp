#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <functional>

#include "jamsim/mlp.hpp"
#include "jamsim/rng.hpp"

using jamsim::Mlp;
using jamsim::RngStream;

namespace {

// Central finite differences on a scalar function of the parameters.
Eigen::VectorXd fd_gradient(Mlp& net, const Eigen::VectorXd& x,
                            const std::function<double(const Eigen::VectorXd&)>& value_of_output,
                            double h = 1e-6) {
  Eigen::VectorXd grad(net.param_count());
  for (Eigen::Index i = 0; i < net.param_count(); ++i) {
    const double saved = net.params()[i];
    net.params()[i] = saved + h;
    const double up = value_of_output(net.forward(x));
    net.params()[i] = saved - h;
    const double down = value_of_output(net.forward(x));
    net.params()[i] = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

void check_close(const Eigen::VectorXd& analytic, const Eigen::VectorXd& numeric, double rel_tol) {
  REQUIRE(analytic.size() == numeric.size());
  for (Eigen::Index i = 0; i < analytic.size(); ++i) {
    const double scale = std::max({std::abs(analytic[i]), std::abs(numeric[i]), 1e-3});
    CHECK(std::abs(analytic[i] - numeric[i]) / scale < rel_tol);
  }
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  Eigen::VectorXd s = (logits.array() - logits.maxCoeff()).exp();
  return s / s.sum();
}

}  // namespace

TEST_CASE("forward matches a hand-computed two-layer net") {
  RngStream rng(1);
  Mlp net({2, 2, 1}, rng);
  // W1 = [[0.5, -0.25], [1, 0]], b1 = [0.1, -0.2], W2 = [2, -1], b2 = 0.3
  net.params() << 0.5, 1.0, -0.25, 0.0, 0.1, -0.2, 2.0, -1.0, 0.3;
  Eigen::VectorXd x(2);
  x << 1.0, 2.0;
  const double h1 = std::tanh(0.5 * 1 - 0.25 * 2 + 0.1);
  const double h2 = std::tanh(1.0 * 1 + 0.0 * 2 - 0.2);
  const double expected = 2.0 * h1 - 1.0 * h2 + 0.3;
  CHECK(net.forward(x)[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("value-head gradient matches central finite differences") {
  RngStream rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Mlp net({4, 5, 1}, rng);  // 4*5+5 + 5*1+1 = 31 parameters
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x[i] = rng.uniform_range(-1, 1);

    net.forward(x);
    Eigen::VectorXd analytic = Eigen::VectorXd::Zero(net.param_count());
    net.backward(Eigen::VectorXd::Ones(1), analytic);

    const auto numeric = fd_gradient(net, x, [](const Eigen::VectorXd& out) { return out[0]; });
    check_close(analytic, numeric, 1e-4);
  }
}

TEST_CASE("log-softmax gradient matches central finite differences") {
  RngStream rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Mlp net({4, 6, 3}, rng);  // 4*6+6 + 6*3+3 = 51 parameters
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x[i] = rng.uniform_range(-1, 1);
    const int action = trial % 3;

    const Eigen::VectorXd scores = softmax(net.forward(x));
    Eigen::VectorXd dlogits = -scores;
    dlogits[action] += 1.0;
    Eigen::VectorXd analytic = Eigen::VectorXd::Zero(net.param_count());
    net.backward(dlogits, analytic);

    const auto numeric = fd_gradient(net, x, [action](const Eigen::VectorXd& logits) {
      const Eigen::VectorXd s = softmax(logits);
      return std::log(s[action]);
    });
    check_close(analytic, numeric, 1e-4);
  }
}

TEST_CASE("initialization is fan-in bounded with zero biases") {
  RngStream rng(13);
  Mlp net({9, 4, 2}, rng);
  // first layer weights at offset 0..35, biases 36..39
  for (int i = 0; i < 36; ++i) CHECK(std::abs(net.params()[i]) <= 1.0 / 3.0);
  for (int i = 36; i < 40; ++i) CHECK(net.params()[i] == 0.0);
}

TEST_CASE("rejects bad shapes") {
  RngStream rng(1);
  CHECK_THROWS_AS(Mlp({5}, rng), std::invalid_argument);
  Mlp net({3, 2}, rng);
  CHECK_THROWS_AS(net.forward(Eigen::VectorXd::Zero(4)), std::invalid_argument);
}
