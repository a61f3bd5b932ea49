#include "wevo/baselines.hpp"
#include "wevo/functions.hpp"

#include <algorithm>

namespace wevo {

std::vector<int> pick_distinct(int n, int count, const std::vector<int>& exclude, Rng& rng) {
  const auto excluded = [&](int v, const std::vector<int>& taken) {
    return std::find(exclude.begin(), exclude.end(), v) != exclude.end() ||
           std::find(taken.begin(), taken.end(), v) != taken.end();
  };
  int available = 0;
  for (int v = 0; v < n; ++v) available += excluded(v, {}) ? 0 : 1;
  if (available < count) throw ConfigError("population too small for the requested distinct indices");
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    const int v = pick(rng);
    if (!excluded(v, out)) out.push_back(v);
  }
  return out;
}

Vector binomial_crossover(const Vector& target, const Vector& mutant, double cr, Rng& rng) {
  if (target.size() != mutant.size()) throw ArgumentError("binomial_crossover: dimension mismatch");
  std::uniform_int_distribution<Eigen::Index> pick(0, target.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::Index j_rand = pick(rng);
  Vector trial = target;
  for (Eigen::Index j = 0; j < target.size(); ++j) {
    if (unit(rng) <= cr || j == j_rand) trial[j] = mutant[j];
  }
  return trial;
}

namespace de {

void Params::validate() const {
  if (!(F > 0.0 && F <= 2.0)) throw ConfigError("de: F must lie in (0, 2]");
  if (!(CR >= 0.0 && CR <= 1.0)) throw ConfigError("de: CR must lie in [0, 1]");
}

Vector rand1_mutant(const Vector& r1, const Vector& r2, const Vector& r3, double F) {
  return r1 + F * (r2 - r3);
}

Population generation(const Population& pop, const Params& params, const Objective& objective, Rng& rng) {
  params.validate();
  if (pop.size() < 4) throw ConfigError("de: population size must be at least 4");
  Population next = pop;
  for (int i = 0; i < pop.size(); ++i) {
    const auto r = pick_distinct(pop.size(), 3, {i}, rng);
    const Vector mutant = rand1_mutant(pop.row(r[0]), pop.row(r[1]), pop.row(r[2]), params.F);
    const Vector trial = objective.clamp(binomial_crossover(pop.row(i), mutant, params.CR, rng));
    const double f = objective.value(trial);
    if (f <= pop.fitness[i]) {
      next.positions.row(i) = trial.transpose();
      next.fitness[i] = f;
    }
  }
  next.generation = pop.generation + 1;
  return next;
}

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options) {
  params.validate();
  check_run_options(options, 4);
  RunRecorder recorder("de", objective, options);
  Rng rng(options.seed);
  Population pop = evaluate_population(uniform_positions(objective, options.n, rng), objective);
  recorder.observe(pop);
  for (int t = 0; t < options.generations; ++t) {
    pop = generation(pop, params, objective, rng);
    recorder.record(pop);
  }
  return recorder.finish(std::move(pop));
}

} // namespace de
} // namespace wevo
