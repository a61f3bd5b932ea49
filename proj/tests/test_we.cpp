#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wevo/functions.hpp"
#include "wevo/wasserstein.hpp"

#include <cmath>

using namespace wevo;

namespace {

Vector v2(double a, double b) {
  Vector x(2);
  x << a, b;
  return x;
}

Population single(const Objective& f, const Vector& x) {
  Matrix m(1, x.size());
  m.row(0) = x.transpose();
  return evaluate_population(m, f);
}

} // namespace

TEST_CASE("beta schedules") {
  we::Schedule s;
  s.beta_min = 1.0;
  s.beta_max = 100.0;
  s.horizon = 3;
  CHECK(s.beta_at(0) == doctest::Approx(1.0));
  CHECK(s.beta_at(1) == doctest::Approx(10.0));
  CHECK(s.beta_at(2) == doctest::Approx(100.0));
  s.beta_kind = we::BetaKind::linear;
  CHECK(s.beta_at(1) == doctest::Approx(50.5));
  s.beta_kind = we::BetaKind::constant;
  CHECK(s.beta_at(2) == 1.0);
  CHECK_THROWS_AS(s.beta_at(3), ArgumentError);
  CHECK_THROWS_AS(s.beta_at(-1), ArgumentError);

  s.horizon = 1;
  s.beta_kind = we::BetaKind::geometric;
  CHECK(s.beta_at(0) == 1.0);

  s.horizon = 500;
  double previous = 0.0;
  for (int t = 0; t < 500; ++t) {
    const double b = we::beta_at(s, t);
    CHECK(b >= previous);
    CHECK(b <= 100.0);
    previous = b;
  }
  CHECK(previous == doctest::Approx(100.0));

  s.eta0 = 0.2;
  s.eta_kind = we::EtaKind::inverse_decay;
  CHECK(s.eta_at(0) == 0.2);
  CHECK(s.eta_at(250) == doctest::Approx(0.2 / 1.5));

  we::Schedule bad;
  bad.beta_max = 0.5;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = {};
  bad.eta0 = 0.0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

TEST_CASE("lone particle follows the gradient") {
  const Objective f = objectives::sphere();
  const Population next = we::step(single(f, v2(1.0, 0.0)), f, 1.0, 0.1);
  CHECK(next.positions(0, 0) == doctest::Approx(0.8));
  CHECK(next.positions(0, 1) == 0.0);
  CHECK(next.fitness[0] == doctest::Approx(0.64));
  CHECK(next.generation == 1);
}

TEST_CASE("two particles repel") {
  const Objective f = objectives::sphere();
  const double a = 0.5, h = 0.5, eta = 0.01, beta = 1.0;
  Matrix m(2, 2);
  m << -a, 0.0, a, 0.0;
  const Population pop = evaluate_population(m, f);
  const Population next = we::step(pop, f, beta, eta, BandwidthOptions{BandwidthRule::fixed, h, {}});
  // grad log rho at -a points at the other particle.
  const double e = std::exp(-2.0 * a * a / (h * h));
  const double g = 2.0 * a * e / (h * h * (1.0 + e));
  CHECK(next.positions(0, 0) == doctest::Approx(-a + eta * (2.0 * a - g / beta)).epsilon(1e-12));
  CHECK(next.positions(1, 0) == doctest::Approx(a - eta * (2.0 * a - g / beta)).epsilon(1e-12));

  // Pure repulsion on a flat landscape spreads the pair.
  Objective flat("flat", "flat", v2(-5, -5), v2(5, 5), [](const Vector&) { return 0.0; },
                 [](const Vector& x) { return Vector(Vector::Zero(x.size())); });
  const Population spread = we::step(evaluate_population(m, flat), flat, beta, eta,
                                     BandwidthOptions{BandwidthRule::fixed, h, {}});
  CHECK(spread.positions(0, 0) < -a);
  CHECK(spread.positions(1, 0) > a);
}

TEST_CASE("cold step is gradient descent") {
  const Objective& f = lookup("himmelblau");
  Rng rng(8);
  const Population pop = evaluate_population(uniform_positions(f, 20, rng), f);
  const Population next = we::step(pop, f, 1e12, 1e-3);
  CHECK(next.fitness.mean() < pop.fitness.mean());
  for (int i = 0; i < pop.size(); ++i) {
    const Vector expected = f.clamp(pop.row(i) - 1e-3 * f.gradient(pop.row(i)));
    CHECK((next.row(i) - expected).norm() < 1e-9);
  }
}

TEST_CASE("projection") {
  const Objective f = objectives::sphere();
  const Vector c = we::project(v2(6.0, -7.0), f, we::Boundary::clamp);
  CHECK(c[0] == 5.0);
  CHECK(c[1] == -5.0);
  const Vector r = we::project(v2(6.0, -7.0), f, we::Boundary::reflect);
  CHECK(r[0] == doctest::Approx(4.0));
  CHECK(r[1] == doctest::Approx(-3.0));
  const Vector far = we::project(v2(27.0, 0.5), f, we::Boundary::reflect);
  // 27 -> -17 (wall 5) -> 7 (wall -5) -> 3 (wall 5)
  CHECK(far[0] == doctest::Approx(3.0));
  CHECK(far[1] == 0.5);
}

TEST_CASE("runs are seeded and stay in the box") {
  const Objective& f = lookup("rastrigin");
  for (auto boundary : {we::Boundary::clamp, we::Boundary::reflect}) {
    we::Options o = we::default_options(f, 60);
    o.boundary = boundary;
    RunOptions ro;
    ro.n = 20;
    ro.seed = 123;
    const RunRecord a = we::run(f, o, ro);
    const RunRecord b = we::run(f, o, ro);
    CHECK(a.final_population.positions == b.final_population.positions);
    CHECK(a.traces.entropy == b.traces.entropy);
    CHECK(a.traces.best_f.size() == 60);
    for (int i = 0; i < a.final_population.size(); ++i) CHECK(f.contains(a.final_population.row(i)));
    ro.seed = 124;
    CHECK(we::run(f, o, ro).best_f != a.best_f);
  }
}

TEST_CASE("single-generation horizon and history") {
  const Objective& f = lookup("himmelblau");
  we::Options o = we::default_options(f, 1);
  RunOptions ro;
  ro.n = 10;
  ro.record_history = true;
  const RunRecord r = we::run(f, o, ro);
  CHECK(r.history.size() == 2);
  CHECK(r.traces.diversity.size() == 1);
  CHECK(r.algorithm == "we");
  CHECK(r.best_f <= r.final_population.fitness.minCoeff());
}

TEST_CASE("default step size") {
  CHECK(we::default_eta(objectives::sphere()) == doctest::Approx(0.05));
  const Objective& beale = lookup("beale");
  CHECK(we::default_eta(beale) < 0.005 * beale.range().maxCoeff());
  CHECK(we::default_eta(beale) == doctest::Approx(1.0 / we::typical_curvature(beale)));
  const we::Options o = we::default_options(lookup("rastrigin"), 10);
  CHECK(o.bandwidth.floor[0] == doctest::Approx(1e-6 * 10.24));
}

TEST_CASE("equilibrium residual") {
  const Objective f = objectives::sphere();
  CHECK(we::equilibrium_residual(single(f, v2(1.0, 0.0)), f, 1.0) == doctest::Approx(2.0));
  CHECK(we::equilibrium_residual(single(f, v2(0.0, 0.0)), f, 1.0) == 0.0);
}

TEST_CASE("errors") {
  const Objective f = objectives::sphere();
  const Population p = single(f, v2(0.1, 0.1));
  CHECK_THROWS_AS(we::step(p, f, 0.0, 0.1), ArgumentError);
  CHECK_THROWS_AS(we::step(p, f, 1.0, -0.1), ArgumentError);
  Objective broken("broken", "broken", v2(-1, -1), v2(1, 1), [](const Vector& x) { return x.sum(); },
                   [](const Vector&) { return Vector(Vector::Constant(2, std::nan(""))); });
  try {
    we::step(single(broken, v2(0.1, 0.1)), broken, 1.0, 0.1);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("particle 0") != std::string::npos);
  }
}
