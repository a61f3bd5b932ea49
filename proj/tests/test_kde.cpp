#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wevo/functions.hpp"
#include "wevo/kde.hpp"
#include "wevo/metrics.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace wevo;

namespace {

Matrix normal_sample(int n, int d, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = g(rng);
  return m;
}

Matrix uniform_sample(int n, int d, double lo, double hi, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = u(rng);
  return m;
}

} // namespace

TEST_CASE("bandwidth rules") {
  const Matrix x = normal_sample(1000, 1, 1);
  const double sd = std::sqrt((x.array() - x.mean()).square().sum() / 999.0);
  const Vector scott = select_bandwidth(x, BandwidthRule::scott);
  CHECK(scott[0] == doctest::Approx(sd * std::pow(1000.0, -0.2)));
  CHECK(std::pow(1000.0, -0.2) == doctest::Approx(0.251).epsilon(1e-3));
  const Vector silverman = select_bandwidth(x, BandwidthRule::silverman);
  CHECK(silverman[0] == doctest::Approx(scott[0] * std::pow(4.0 / 3.0, 0.2)));
  CHECK(select_bandwidth(x, BandwidthRule::fixed, 0.3)[0] == 0.3);
  CHECK_THROWS_AS(select_bandwidth(x, BandwidthRule::fixed, 0.0), ArgumentError);
}

TEST_CASE("floor handling") {
  Matrix one(1, 2);
  one << 0.5, -0.5;
  const KdeModel m = KdeModel::fit(one);
  CHECK(m.bandwidth()[0] == 1e-3);
  CHECK(m.bandwidth()[1] == 1e-3);

  const Objective& r = lookup("rastrigin");
  CHECK(bandwidth_floor(r)[0] == doctest::Approx(1e-3 * 10.24));
  const KdeModel floored = KdeModel::fit(one, bandwidth_options_for(r));
  CHECK(floored.bandwidth()[1] == doctest::Approx(0.01024));

  Matrix dup(4, 2);
  dup << 0, 0, 0, 0, 1, 2, 3, 1;
  const KdeModel d = KdeModel::fit(dup);
  CHECK(std::isfinite(d.log_density(Vector::Zero(2))));
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(KdeModel::fit(Matrix(0, 2)), ArgumentError);
  Matrix bad(2, 1);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(KdeModel::fit(bad), ArgumentError);
  const KdeModel m = KdeModel::fit(normal_sample(10, 2, 3));
  CHECK_THROWS_AS(m.log_density(Vector::Zero(3)), ArgumentError);
}

TEST_CASE("log density closed forms") {
  Matrix one(1, 2);
  one << 0.3, 0.7;
  BandwidthOptions fixed{BandwidthRule::fixed, 0.2, {}};
  const KdeModel single = KdeModel::fit(one, fixed);
  CHECK(single.log_density(one.row(0).transpose()) ==
        doctest::Approx(-std::log(2 * std::numbers::pi * 0.2 * 0.2)));
  CHECK(single.grad_log_density(one.row(0).transpose()).norm() == 0.0);

  const double a = 0.7, h = 0.4;
  Matrix pair(2, 1);
  pair << -a, a;
  const KdeModel sym = KdeModel::fit(pair, {BandwidthRule::fixed, h, {}});
  const double expected = std::log(std::exp(-0.5 * a * a / (h * h)) / (h * std::sqrt(2 * std::numbers::pi)));
  CHECK(sym.log_density(Vector::Zero(1)) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::abs(sym.grad_log_density(Vector::Zero(1))[0]) < 1e-15);

  Vector far(1);
  far << 1e6 * h;
  const double lf = sym.log_density(far);
  CHECK(std::isfinite(lf));
  CHECK(lf < -1e11);
  CHECK(std::isfinite(sym.grad_log_density(far)[0]));
}

TEST_CASE("density integrates to one") {
  const Matrix x = uniform_sample(40, 2, -1.0, 2.0, 7);
  const KdeModel m = KdeModel::fit(x);
  const Vector h = m.bandwidth();
  const Vector lo = x.colwise().minCoeff().transpose() - 6.0 * h;
  const Vector hi = x.colwise().maxCoeff().transpose() + 6.0 * h;
  const int grid = 401;
  const double dx = (hi[0] - lo[0]) / (grid - 1), dy = (hi[1] - lo[1]) / (grid - 1);
  double total = 0.0;
  Vector q(2);
  for (int i = 0; i < grid; ++i) {
    for (int k = 0; k < grid; ++k) {
      q << lo[0] + i * dx, lo[1] + k * dy;
      const double w = (i == 0 || i == grid - 1 ? 0.5 : 1.0) * (k == 0 || k == grid - 1 ? 0.5 : 1.0);
      total += w * std::exp(m.log_density(q));
    }
  }
  CHECK(total * dx * dy == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("gradient matches finite differences") {
  const Matrix x = uniform_sample(25, 2, -3.0, 3.0, 11);
  const KdeModel m = KdeModel::fit(x);
  Rng rng(5);
  std::uniform_real_distribution<double> u(-3.5, 3.5);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    Vector q(2);
    q << u(rng), u(rng);
    const Vector g = m.grad_log_density(q);
    const Vector fd = finite_diff_gradient([&](const Vector& p) { return m.log_density(p); }, q, 1e-6);
    worst = std::max(worst, (g - fd).norm() / std::max(g.norm(), 1e-12));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("translation equivariance and snapshot semantics") {
  Matrix x = uniform_sample(30, 2, -1.0, 1.0, 13);
  const KdeModel m = KdeModel::fit(x);
  Vector shift(2);
  shift << 3.25, -1.5;
  const Matrix moved = x.rowwise() + shift.transpose();
  const KdeModel ms = KdeModel::fit(moved);
  Vector q(2);
  q << 0.1, -0.2;
  CHECK(std::abs(m.log_density(q) - ms.log_density(q + shift)) < 1e-12);

  const double before = m.log_density(q);
  x.setConstant(100.0);
  CHECK(m.log_density(q) == before);
}

TEST_CASE("entropy") {
  const Matrix x = normal_sample(10000, 2, 17);
  const double s = KdeModel::fit(x).entropy(x);
  const double exact = std::log(2 * std::numbers::pi * std::numbers::e);
  CHECK(exact == doctest::Approx(2.8379).epsilon(1e-4));
  CHECK(std::abs(s - exact) < 0.1);

  Matrix same(5, 2);
  same.rowwise() = Eigen::RowVector2d(0.4, 0.4);
  const KdeModel flat = KdeModel::fit(same);
  CHECK(flat.entropy(same) == doctest::Approx(std::log(2 * std::numbers::pi * 1e-6)).epsilon(1e-14));

  const Matrix y = uniform_sample(50, 2, -1.0, 1.0, 19);
  CHECK(population_entropy(2.0 * y) > population_entropy(y));
}
