#include "wevo/baselines.hpp"
#include "wevo/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace wevo::jade {

State initial_state(const Params& params, int dim) {
  State s;
  s.mu_cr = params.mu_cr0;
  s.mu_f = params.mu_f0;
  s.archive = Matrix(0, dim);
  return s;
}

namespace {

double sample_cauchy_f(double location, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double f = location + 0.1 * std::tan(std::numbers::pi * (unit(rng) - 0.5));
    if (f > 0.0) return std::min(f, 1.0);
  }
  return location;
}

} // namespace

GenerationResult generation(const State& state, const Population& pop, const Params& params,
                            const Objective& objective, Rng& rng) {
  const int n = pop.size();
  if (n < 4) throw ConfigError("jade: population size must be at least 4");
  if (!(params.p > 0.0 && params.p <= 1.0)) throw ConfigError("jade: p must lie in (0, 1]");
  if (!(params.c >= 0.0 && params.c <= 1.0)) throw ConfigError("jade: c must lie in [0, 1]");
  const int archive_cap = params.archive_size > 0 ? params.archive_size : n;
  const int top = std::max(1, static_cast<int>(std::floor(params.p * n)));

  std::vector<int> ranked(static_cast<std::size_t>(n));
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) { return pop.fitness[a] < pop.fitness[b]; });

  std::normal_distribution<double> cr_dist(state.mu_cr, 0.1);
  std::uniform_int_distribution<int> pick_top(0, top - 1);
  const int pool = n + static_cast<int>(state.archive.rows());
  std::uniform_int_distribution<int> pick_pool(0, pool - 1);

  GenerationResult out{state, pop};
  std::vector<double> good_cr;
  std::vector<double> good_f;
  std::vector<Vector> replaced;

  for (int i = 0; i < n; ++i) {
    const double cr = std::clamp(cr_dist(rng), 0.0, 1.0);
    const double f = sample_cauchy_f(state.mu_f, rng);
    const int best = ranked[static_cast<std::size_t>(pick_top(rng))];
    const int r1 = pick_distinct(n, 1, {i}, rng).front();
    int r2 = pick_pool(rng);
    while (r2 == i || r2 == r1) r2 = pick_pool(rng);
    const Vector x2 = r2 < n ? pop.row(r2) : Vector(state.archive.row(r2 - n).transpose());

    const Vector xi = pop.row(i);
    const Vector mutant = xi + f * (pop.row(best) - xi) + f * (pop.row(r1) - x2);
    const Vector trial = objective.clamp(binomial_crossover(xi, mutant, cr, rng));
    const double ft = objective.value(trial);
    if (ft <= pop.fitness[i]) {
      if (ft < pop.fitness[i]) {
        good_cr.push_back(cr);
        good_f.push_back(f);
        replaced.push_back(xi);
      }
      out.population.positions.row(i) = trial.transpose();
      out.population.fitness[i] = ft;
    }
  }
  out.population.generation = pop.generation + 1;

  // Archive of replaced parents, trimmed at random down to the cap.
  Matrix archive(state.archive.rows() + static_cast<Eigen::Index>(replaced.size()), pop.dim());
  archive.topRows(state.archive.rows()) = state.archive;
  for (std::size_t k = 0; k < replaced.size(); ++k)
    archive.row(state.archive.rows() + static_cast<Eigen::Index>(k)) = replaced[k].transpose();
  while (archive.rows() > archive_cap) {
    std::uniform_int_distribution<Eigen::Index> drop(0, archive.rows() - 1);
    const Eigen::Index victim = drop(rng);
    archive.row(victim) = archive.row(archive.rows() - 1);
    archive.conservativeResize(archive.rows() - 1, Eigen::NoChange);
  }
  out.state.archive = std::move(archive);

  if (!good_cr.empty()) {
    const double mean_cr = std::accumulate(good_cr.begin(), good_cr.end(), 0.0) / good_cr.size();
    double sum_f = 0.0, sum_f2 = 0.0;
    for (double v : good_f) {
      sum_f += v;
      sum_f2 += v * v;
    }
    out.state.mu_cr = std::clamp((1.0 - params.c) * state.mu_cr + params.c * mean_cr, 0.0, 1.0);
    out.state.mu_f = std::clamp((1.0 - params.c) * state.mu_f + params.c * (sum_f2 / sum_f), 1e-3, 1.0);
  }
  return out;
}

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options) {
  check_run_options(options, 4);
  RunRecorder recorder("jade", objective, options);
  Rng rng(options.seed);
  Population pop = evaluate_population(uniform_positions(objective, options.n, rng), objective);
  recorder.observe(pop);
  State state = initial_state(params, objective.dim());
  for (int t = 0; t < options.generations; ++t) {
    auto result = generation(state, pop, params, objective, rng);
    state = std::move(result.state);
    pop = std::move(result.population);
    recorder.record(pop);
  }
  return recorder.finish(std::move(pop));
}

} // namespace wevo::jade
