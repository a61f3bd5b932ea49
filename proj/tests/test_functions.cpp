#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wevo/functions.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace wevo;

namespace {

Vector v2(double a, double b) {
  Vector x(2);
  x << a, b;
  return x;
}

// Holder Table kinks: sin(x)cos(y) = 0 and r = pi.
bool near_holder_kink(const Vector& x) {
  const double outer = std::sin(x[0]) * std::cos(x[1]);
  const double inner = 1.0 - x.norm() / std::numbers::pi;
  return std::abs(outer) < 1e-6 || std::abs(inner) < 1e-6;
}

double relative_gradient_error(const Objective& f, const Vector& x) {
  const Vector analytic = f.gradient(x);
  const Vector numeric = finite_diff_gradient([&](const Vector& p) { return f.value(p); }, x, 1e-6 * f.range());
  const double scale = std::max({analytic.norm(), numeric.norm(), 1e-12});
  return (analytic - numeric).norm() / scale;
}

} // namespace

TEST_CASE("catalog has 22 entries with stable ids in table order") {
  const auto& catalog = list_benchmarks();
  REQUIRE(catalog.size() == 22);
  std::set<std::string> ids;
  for (const auto& f : catalog) ids.insert(f.id());
  CHECK(ids.size() == 22);
  CHECK(catalog.front().id() == "rastrigin");
  CHECK(catalog[9].id() == "optical_lattice");
  CHECK(catalog[10].id() == "schwefel222");
  CHECK(catalog.back().id() == "schwefel222_rotate_translate_scale");
  int bench = 0, inv = 0;
  for (const auto& f : catalog) {
    CHECK(f.dim() == 2);
    CHECK((f.lower().array() < f.upper().array()).all());
    bench += f.suite() == Suite::benchmark;
    inv += f.suite() == Suite::invariance;
  }
  CHECK(bench == 10);
  CHECK(inv == 12);
}

TEST_CASE("lookup") {
  const Objective& r = lookup("rastrigin");
  CHECK(r.lower()[0] == doctest::Approx(-5.12));
  CHECK(r.upper()[1] == doctest::Approx(5.12));
  CHECK_THROWS_AS(lookup("nonexistent"), NotFoundError);
  CHECK(lookup("sphere").suite() == Suite::auxiliary);
}

TEST_CASE("values at documented optima") {
  CHECK(lookup("rastrigin").value(v2(0, 0)) == doctest::Approx(0.0));
  CHECK(lookup("himmelblau").value(v2(3, 2)) == doctest::Approx(0.0));
  CHECK(lookup("beale").value(v2(3, 0.5)) == doctest::Approx(0.0));
  CHECK(lookup("schwefel222").value(v2(0, 0)) == 0.0);
  const Objective& camel = lookup("six_hump_camel");
  REQUIRE(camel.known_optima().size() == 2);
  for (const auto& opt : camel.known_optima()) CHECK(camel.value(opt.position) == doctest::Approx(-1.0316).epsilon(1e-4));
}

TEST_CASE("schwefel double-sum form") {
  const Objective& s = lookup("schwefel222");
  // x1^2 + (x1 + x2)^2
  CHECK(s.value(v2(1, 2)) == doctest::Approx(1.0 + 9.0));
  CHECK(s.value(v2(-3, 3)) == doctest::Approx(9.0));
  CHECK(s.lower()[0] == -100.0);
  CHECK(s.upper()[1] == 100.0);
}

TEST_CASE("dimension mismatch is an argument error") {
  Vector x(3);
  x.setZero();
  CHECK_THROWS_AS(lookup("rastrigin").value(x), ArgumentError);
  CHECK_THROWS_AS(lookup("rastrigin").gradient(x), ArgumentError);
}

TEST_CASE("out-of-bounds points are still evaluated") {
  CHECK(std::isfinite(lookup("rastrigin").value(v2(50, -50))));
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937_64 rng(2024);
  for (const auto& f : list_benchmarks()) {
    CAPTURE(f.id());
    double worst = 0.0;
    int accepted = 0;
    while (accepted < 100) {
      Vector x(f.dim());
      for (int j = 0; j < f.dim(); ++j) {
        std::uniform_real_distribution<double> u(f.lower()[j], f.upper()[j]);
        x[j] = u(rng);
      }
      if (f.id() == "holder_table" && near_holder_kink(x)) continue;
      worst = std::max(worst, relative_gradient_error(f, x));
      ++accepted;
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("gradient spot checks") {
  CHECK(lookup("rastrigin").gradient(v2(0, 0)).norm() < 1e-12);
  CHECK(relative_gradient_error(lookup("schwefel222"), v2(1, 0)) < 1e-6);
  CHECK(relative_gradient_error(lookup("double_well"), v2(1, 0)) < 1e-6);
  // 2 [x1 + (x1 + x2), x1 + x2] at (1, 0)
  const Vector g = lookup("schwefel222").gradient(v2(1, 0));
  CHECK(g[0] == doctest::Approx(4.0));
  CHECK(g[1] == doctest::Approx(2.0));
}

TEST_CASE("known optima residuals") {
  for (const auto& f : list_benchmarks()) {
    CAPTURE(f.id());
    for (const auto& opt : f.known_optima()) {
      CAPTURE(format_vector(opt.position));
      CHECK(std::abs(f.value(opt.position) - opt.value) <= 1e-9);
      CHECK(f.contains(opt.position));
      CHECK(f.gradient(opt.position).norm() <= 1e-6);
    }
  }
  CHECK(lookup("himmelblau").known_optima().size() == 4);
  CHECK(lookup("holder_table").known_optima().size() == 4);
  CHECK(lookup("schwefel222_shift_right_20").known_optima().size() == 1);
}

TEST_CASE("finite_diff_gradient") {
  auto square = [](const Vector& x) { return x[0] * x[0]; };
  Vector x(1);
  x << 3.0;
  CHECK(finite_diff_gradient(square, x, 1e-5)[0] == doctest::Approx(6.0).epsilon(1e-8));
  auto constant = [](const Vector&) { return 4.2; };
  CHECK(finite_diff_gradient(constant, v2(1, -1), 1e-3).norm() == 0.0);
  auto blowup = [](const Vector& p) { return p[1] > 0.5 ? std::numeric_limits<double>::infinity() : 0.0; };
  try {
    finite_diff_gradient(blowup, v2(0, 0.5), 1e-3);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("coordinate 1") != std::string::npos);
  }
  CHECK_THROWS_AS(finite_diff_gradient(square, x, 0.0), ArgumentError);
}

TEST_CASE("fallback gradient for user objectives") {
  Vector lo(2), hi(2);
  lo << -1, -1;
  hi << 1, 1;
  Objective f("user", "user", lo, hi, [](const Vector& x) { return x[0] * x[0] + 3 * x[1]; });
  CHECK_FALSE(f.has_analytic_gradient());
  const Vector g = f.gradient(v2(0.5, 0.2));
  CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g[1] == doctest::Approx(3.0).epsilon(1e-8));
  CHECK_THROWS_AS(Objective("bad", "bad", hi, lo, [](const Vector&) { return 0.0; }), ArgumentError);
}

TEST_CASE("affine transforms") {
  const auto shift = AffineTransform::translate(v2(20, 20));
  CHECK(apply_transform(shift, v2(20, 20)).norm() == 0.0);
  CHECK(lookup("schwefel222_shift_right_20").value(v2(20, 20)) == 0.0);

  const auto rot = AffineTransform::rotate(45.0);
  CHECK(apply_transform(rot, v2(0, 0)).norm() == 0.0);
  const Vector r = apply_transform(AffineTransform::rotate(90.0), v2(1, 0));
  CHECK(r[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(1.0));

  CHECK_THROWS_AS(AffineTransform::scale(v2(1.0, 0.0)), ArgumentError);
  CHECK_THROWS_AS(AffineTransform::scale(v2(-1.0, 2.0)), ArgumentError);
  CHECK_THROWS_AS(apply_transform(shift, Vector::Zero(3)), ArgumentError);

  // Composite order: translate, rotate, scale, applied left to right.
  const auto seq = AffineTransform::composite(
      {AffineTransform::translate(v2(10, -10)), AffineTransform::rotate(60.0), AffineTransform::scale(v2(0.8, 1.2))});
  const Vector p(v2(13, -6));
  const double c = std::cos(std::numbers::pi / 3), s = std::sin(std::numbers::pi / 3);
  const Vector manual = v2(0.8 * (c * 3 - s * 4), 1.2 * (s * 3 + c * 4));
  CHECK((apply_transform(seq, p) - manual).norm() < 1e-12);
}

TEST_CASE("composite preimages of the origin") {
  // translate(10,-10) -> rotate -> scale: S R (x - t) = 0 at x = t.
  const Objective& trs = lookup("schwefel222_translate_rotate_scale");
  CHECK(trs.value(v2(10, -10)) == doctest::Approx(0.0).epsilon(1e-20));
  // rotate(45) -> translate(-15,15) -> scale: R x + (15,-15) = 0 at x = R(-45)(-15,15) = (0, 15 sqrt 2).
  const Objective& rts = lookup("schwefel222_rotate_translate_scale");
  const Vector pre = v2(0.0, 15.0 * std::numbers::sqrt2);
  CHECK(std::abs(rts.value(pre)) < 1e-20);
  REQUIRE(rts.known_optima().size() == 1);
  CHECK((rts.known_optima()[0].position - pre).norm() < 1e-12);
}

TEST_CASE("transformed objectives share the base domain") {
  for (const auto& f : list_benchmarks()) {
    if (f.suite() != Suite::invariance) continue;
    CHECK(f.lower()[0] == -100.0);
    CHECK(f.upper()[1] == 100.0);
  }
}

TEST_CASE("multipole optima only for the default charges") {
  CHECK(objectives::multipole().known_optima().size() == 2);
  auto charges = objectives::default_multipole_charges();
  charges[0].x = -0.5;
  CHECK(objectives::multipole(charges).known_optima().empty());
}
