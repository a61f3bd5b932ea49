#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wevo/baselines.hpp"
#include "wevo/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace wevo;

namespace {

Vector v2(double a, double b) {
  Vector x(2);
  x << a, b;
  return x;
}

Objective flat() {
  return Objective("flat", "flat", v2(-1, -1), v2(1, 1), [](const Vector&) { return 1.0; });
}

Population random_population(const Objective& f, int n, std::uint64_t seed) {
  Rng rng(seed);
  return evaluate_population(uniform_positions(f, n, rng), f);
}

} // namespace

TEST_CASE("index sampling and crossover") {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const auto idx = pick_distinct(6, 3, {2}, rng);
    const std::set<int> unique(idx.begin(), idx.end());
    CHECK(unique.size() == 3);
    CHECK_FALSE(unique.count(2));
    for (int i : idx) CHECK((i >= 0 && i < 6));
  }
  CHECK_THROWS_AS(pick_distinct(3, 3, {0}, rng), ConfigError);

  const Vector target = v2(0, 0), mutant = v2(1, 1);
  CHECK(binomial_crossover(target, mutant, 1.0, rng) == mutant);
  for (int k = 0; k < 50; ++k) CHECK(binomial_crossover(target, mutant, 0.0, rng).sum() == 1.0);
}

TEST_CASE("de mutant and selection") {
  const Vector m = de::rand1_mutant(v2(1, 1), v2(3, 2), v2(1, 0), 0.5);
  CHECK(m[0] == 2.0);
  CHECK(m[1] == 2.0);

  const Objective& f = lookup("rastrigin");
  Population pop = random_population(f, 20, 2);
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const Population next = de::generation(pop, {}, f, rng);
    CHECK((next.fitness.array() <= pop.fitness.array()).all());
    for (int i = 0; i < next.size(); ++i) CHECK(f.contains(next.row(i)));
    pop = next;
  }

  // Equal fitness still replaces the parent.
  const Objective g = flat();
  const Population p0 = random_population(g, 8, 4);
  const Population p1 = de::generation(p0, {0.5, 1.0}, g, rng);
  for (int i = 0; i < 8; ++i) CHECK(p1.row(i) != p0.row(i));

  CHECK_THROWS_AS(de::generation(random_population(f, 3, 5), {}, f, rng), ConfigError);
  CHECK_THROWS_AS((de::Params{0.0, 0.5}.validate()), ConfigError);
  CHECK_THROWS_AS((de::Params{0.5, 1.5}.validate()), ConfigError);
}

TEST_CASE("ga operators") {
  const Objective& f = lookup("himmelblau");
  Rng rng(6);
  ga::Params none;
  none.crossover_rate = 0.0;
  none.mutation_rate = 0.0;
  const auto [c1, c2] = ga::breed(v2(1, 2), v2(-3, 0.5), none, f, rng);
  CHECK(c1 == v2(1, 2));
  CHECK(c2 == v2(-3, 0.5));

  // Fully annealed mutation leaves BLX children inside the parents' hull
  // extended by alpha.
  ga::Params blx;
  blx.mutation_rate = 1.0;
  blx.crossover_rate = 1.0;
  for (int k = 0; k < 100; ++k) {
    const auto [a, b] = ga::breed(v2(0, 0), v2(1, 1), blx, f, rng, 1.0);
    for (const Vector& c : {a, b})
      for (int j = 0; j < 2; ++j) CHECK((c[j] >= -0.5 && c[j] <= 1.5));
  }

  const Population pop = random_population(f, 10, 7);
  for (int k = 0; k < 20; ++k) {
    const int w = ga::tournament(pop, 10, rng);
    CHECK((w >= 0 && w < 10));
  }

  Population cur = pop;
  double best = cur.fitness.minCoeff();
  for (int t = 0; t < 40; ++t) {
    cur = ga::generation(cur, {}, f, rng, t / 40.0);
    CHECK(cur.fitness.minCoeff() <= best);
    best = cur.fitness.minCoeff();
  }

  CHECK_THROWS_AS(ga::generation(random_population(f, 5, 8), {}, f, rng), ConfigError);
  ga::Params bad;
  bad.mutation_decay = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("cma-es defaults") {
  const cmaes::State s = cmaes::initial_state(Vector::Zero(2), 1.0, {}, 30);
  CHECK(s.lambda == 30);
  CHECK(s.mu == 15);
  CHECK(s.weights.sum() == doctest::Approx(1.0));
  for (int i = 1; i < s.mu; ++i) CHECK(s.weights[i] < s.weights[i - 1]);
  CHECK(s.mu_eff == doctest::Approx(1.0 / s.weights.squaredNorm()));
  CHECK(s.chi_n == doctest::Approx(std::sqrt(2.0) * (1.0 - 1.0 / 8.0 + 1.0 / 84.0)));
  CHECK(cmaes::initial_state(Vector::Zero(2), 1.0, {}, 2).lambda == 6);
  CHECK(s.C.isApprox(Matrix::Identity(2, 2)));
}

TEST_CASE("cma-es degenerate learning rates") {
  const Objective f = objectives::sphere();
  cmaes::Params p;
  p.mu = 1;
  p.c_1 = 0.0;
  p.c_mu = 0.0;
  cmaes::State s = cmaes::initial_state(v2(2, 2), 0.1, p, 10);
  CHECK(s.mu == 1);
  CHECK(s.mu_eff == doctest::Approx(1.0));
  Rng rng(9);
  for (int t = 0; t < 5; ++t) {
    const auto r = cmaes::generation(s, f, rng);
    Eigen::Index best;
    r.offspring.fitness.minCoeff(&best);
    CHECK((r.state.mean - r.offspring.row(static_cast<int>(best))).norm() < 1e-12);
    CHECK(r.state.C.isApprox(Matrix::Identity(2, 2), 1e-12));
    s = r.state;
  }
}

TEST_CASE("cma-es keeps C positive definite") {
  const Objective& f = lookup("beale");
  RunOptions ro;
  ro.n = 10;
  ro.generations = 200;
  double smallest = 1.0;
  int calls = 0;
  const RunRecord r = cmaes::run(f, {}, ro, [&](const cmaes::State& s) {
    smallest = std::min(smallest, cmaes::min_eigenvalue(s));
    CHECK((s.C - s.C.transpose()).norm() <= 1e-12 * s.C.norm());
    ++calls;
  });
  CHECK(calls == 200);
  CHECK(smallest > 0.0);
  CHECK(r.traces.best_f.size() == 200);
}

TEST_CASE("jade adaptation") {
  const Objective& f = lookup("rastrigin");
  const Population pop = random_population(f, 20, 10);
  Rng rng(11);
  jade::Params frozen;
  frozen.c = 0.0;
  const auto r = jade::generation(jade::initial_state(frozen, 2), pop, frozen, f, rng);
  CHECK(r.state.mu_cr == 0.5);
  CHECK(r.state.mu_f == 0.5);
  CHECK((r.population.fitness.array() <= pop.fitness.array()).all());

  jade::State s = jade::initial_state({}, 2);
  Population cur = pop;
  for (int t = 0; t < 50; ++t) {
    const auto g = jade::generation(s, cur, {}, f, rng);
    CHECK(g.state.archive.rows() <= 20);
    CHECK((g.state.mu_cr >= 0.0 && g.state.mu_cr <= 1.0));
    CHECK((g.state.mu_f > 0.0 && g.state.mu_f <= 1.0));
    s = g.state;
    cur = g.population;
  }
  CHECK_THROWS_AS(jade::generation(s, random_population(f, 3, 12), {}, f, rng), ConfigError);
}

TEST_CASE("sade learning period") {
  const Objective& f = lookup("rastrigin");
  sade::Params p;
  p.learning_period = 10;
  sade::State s = sade::initial_state(p);
  Population cur = random_population(f, 20, 13);
  Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    const auto g = sade::generation(s, cur, p, f, rng);
    if (t + 1 < p.learning_period) {
      CHECK(g.state.probability[0] == 0.5);
      CHECK(g.state.probability[1] == 0.5);
    }
    CHECK(g.state.probability[0] + g.state.probability[1] == doctest::Approx(1.0));
    CHECK(g.state.successes.size() <= 10);
    CHECK((g.population.fitness.array() <= cur.fitness.array()).all());
    s = g.state;
    cur = g.population;
  }
  CHECK(s.generation == 30);
  CHECK_THROWS_AS(sade::generation(s, random_population(f, 4, 15), p, f, rng), ConfigError);
}

TEST_CASE("every baseline solves the sphere") {
  const Objective f = objectives::sphere();
  RunOptions ro;
  ro.n = 30;
  ro.generations = 500;
  ro.seed = 42;
  CHECK(de::run(f, {}, ro).best_f < 1e-2);
  CHECK(ga::run(f, {}, ro).best_f < 1e-2);
  CHECK(cmaes::run(f, {}, ro).best_f < 1e-2);
  CHECK(jade::run(f, {}, ro).best_f < 1e-2);
  CHECK(sade::run(f, {}, ro).best_f < 1e-2);
}

TEST_CASE("runs are reproducible") {
  const Objective& f = lookup("six_hump_camel");
  RunOptions ro;
  ro.n = 12;
  ro.generations = 40;
  ro.seed = 77;
  CHECK(de::run(f, {}, ro).traces.best_f == de::run(f, {}, ro).traces.best_f);
  CHECK(ga::run(f, {}, ro).final_population.positions == ga::run(f, {}, ro).final_population.positions);
  CHECK(cmaes::run(f, {}, ro).best_x == cmaes::run(f, {}, ro).best_x);
  CHECK(jade::run(f, {}, ro).traces.entropy == jade::run(f, {}, ro).traces.entropy);
  CHECK(sade::run(f, {}, ro).traces.diversity == sade::run(f, {}, ro).traces.diversity);
}
