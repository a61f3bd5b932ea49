#include "wevo/baselines.hpp"
#include "wevo/functions.hpp"

#include <algorithm>
#include <cmath>

namespace wevo::ga {

void Params::validate() const {
  if (tournament_size < 1) throw ConfigError("ga: tournament size must be at least 1");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw ConfigError("ga: crossover rate must lie in [0, 1]");
  if (!(blx_alpha >= 0.0)) throw ConfigError("ga: BLX alpha must be non-negative");
  if (mutation_rate > 1.0) throw ConfigError("ga: mutation rate must be at most 1");
  if (!(mutation_scale >= 0.0)) throw ConfigError("ga: mutation scale must be non-negative");
  if (!(mutation_decay >= 0.0)) throw ConfigError("ga: mutation decay must be non-negative");
  if (elites < 0) throw ConfigError("ga: elites must be non-negative");
}

int tournament(const Population& pop, int size, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, pop.size() - 1);
  int winner = pick(rng);
  for (int k = 1; k < size; ++k) {
    const int challenger = pick(rng);
    if (pop.fitness[challenger] < pop.fitness[winner]) winner = challenger;
  }
  return winner;
}

std::pair<Vector, Vector> breed(const Vector& p1, const Vector& p2, const Params& params,
                                const Objective& objective, Rng& rng, double progress) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector c1 = p1;
  Vector c2 = p2;
  if (unit(rng) < params.crossover_rate) {
    for (Eigen::Index j = 0; j < p1.size(); ++j) {
      const double lo = std::min(p1[j], p2[j]);
      const double hi = std::max(p1[j], p2[j]);
      const double spread = params.blx_alpha * (hi - lo);
      std::uniform_real_distribution<double> blend(lo - spread, hi + spread);
      c1[j] = hi > lo || spread > 0.0 ? blend(rng) : lo;
      c2[j] = hi > lo || spread > 0.0 ? blend(rng) : lo;
    }
  }
  const double rate = params.mutation_rate < 0.0 ? 1.0 / static_cast<double>(p1.size())
                                                 : params.mutation_rate;
  const double shrink =
      params.mutation_decay > 0.0 ? std::pow(std::clamp(1.0 - progress, 0.0, 1.0), params.mutation_decay) : 1.0;
  const Vector sigma = params.mutation_scale * shrink * objective.range();
  for (Vector* child : {&c1, &c2}) {
    for (Eigen::Index j = 0; j < child->size(); ++j) {
      if (unit(rng) < rate) (*child)[j] += sigma[j] * gauss(rng);
    }
  }
  return {objective.clamp(c1), objective.clamp(c2)};
}

Population generation(const Population& pop, const Params& params, const Objective& objective, Rng& rng,
                      double progress) {
  params.validate();
  if (pop.size() < 2 || pop.size() % 2 != 0) throw ConfigError("ga: population size must be even and at least 2");
  Matrix children(pop.size(), pop.dim());
  for (int i = 0; i < pop.size(); i += 2) {
    const int a = tournament(pop, params.tournament_size, rng);
    const int b = tournament(pop, params.tournament_size, rng);
    auto [c1, c2] = breed(pop.row(a), pop.row(b), params, objective, rng, progress);
    children.row(i) = c1.transpose();
    children.row(i + 1) = c2.transpose();
  }
  Population next = evaluate_population(std::move(children), objective, pop.generation + 1);

  // Elitism: the best parents replace the worst children.
  const int elites = std::min(params.elites, pop.size());
  std::vector<int> parent_order(static_cast<std::size_t>(pop.size()));
  std::vector<int> child_order(static_cast<std::size_t>(pop.size()));
  for (int i = 0; i < pop.size(); ++i) parent_order[i] = child_order[i] = i;
  std::stable_sort(parent_order.begin(), parent_order.end(),
                   [&](int x, int y) { return pop.fitness[x] < pop.fitness[y]; });
  std::stable_sort(child_order.begin(), child_order.end(),
                   [&](int x, int y) { return next.fitness[x] > next.fitness[y]; });
  for (int e = 0; e < elites; ++e) {
    const int src = parent_order[static_cast<std::size_t>(e)];
    const int dst = child_order[static_cast<std::size_t>(e)];
    if (pop.fitness[src] < next.fitness[dst]) {
      next.positions.row(dst) = pop.positions.row(src);
      next.fitness[dst] = pop.fitness[src];
    }
  }
  return next;
}

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options) {
  params.validate();
  check_run_options(options, 2);
  if (options.n % 2 != 0) throw ConfigError("ga: population size must be even");
  RunRecorder recorder("ga", objective, options);
  Rng rng(options.seed);
  Population pop = evaluate_population(uniform_positions(objective, options.n, rng), objective);
  recorder.observe(pop);
  for (int t = 0; t < options.generations; ++t) {
    pop = generation(pop, params, objective, rng,
                     static_cast<double>(t + 1) / static_cast<double>(options.generations));
    recorder.record(pop);
  }
  return recorder.finish(std::move(pop));
}

} // namespace wevo::ga
