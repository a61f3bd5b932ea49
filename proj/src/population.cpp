#include "wevo/population.hpp"

#include "wevo/functions.hpp"
#include "wevo/metrics.hpp"

#include <cmath>
#include <sstream>

namespace wevo {

Population evaluate_population(Matrix positions, const Objective& objective, int generation) {
  Population pop;
  pop.fitness.resize(positions.rows());
  for (Eigen::Index i = 0; i < positions.rows(); ++i) {
    const double f = objective.value(positions.row(i).transpose());
    if (!std::isfinite(f)) {
      std::ostringstream msg;
      msg << objective.id() << ": non-finite value at particle " << i << ' '
          << format_vector(positions.row(i).transpose());
      throw NumericError(msg.str());
    }
    pop.fitness[i] = f;
  }
  pop.positions = std::move(positions);
  pop.generation = generation;
  return pop;
}

Matrix uniform_positions(const Objective& objective, int n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix x(n, objective.dim());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < objective.dim(); ++k)
      x(i, k) = objective.lower()[k] + unit(rng) * (objective.upper()[k] - objective.lower()[k]);
  return x;
}

bool operator==(const BandwidthOptions& a, const BandwidthOptions& b) {
  return a.rule == b.rule && a.fixed == b.fixed && a.floor.size() == b.floor.size() &&
         (a.floor.size() == 0 || a.floor == b.floor);
}

void check_run_options(const RunOptions& options, int min_n) {
  if (options.n < min_n) throw ConfigError("population size must be at least " + std::to_string(min_n));
  if (options.generations < 1) throw ConfigError("generations must be at least 1");
  if (!(options.metric_beta > 0.0)) throw ConfigError("metric beta must be positive");
}

RunRecorder::RunRecorder(std::string algorithm, const Objective& objective, const RunOptions& options)
    : objective_(objective), options_(options),
      metric_bandwidth_(bandwidth_options_for(objective)), start_(std::chrono::steady_clock::now()) {
  record_.algorithm = std::move(algorithm);
  record_.function_id = objective.id();
  record_.seed = options.seed;
  const auto t = static_cast<std::size_t>(options.generations);
  for (auto* trace : {&record_.traces.best_f, &record_.traces.mean_f, &record_.traces.entropy,
                      &record_.traces.free_energy, &record_.traces.diversity})
    trace->reserve(t);
}

void RunRecorder::update_best(const Population& pop) {
  Eigen::Index best = 0;
  const double f = pop.fitness.minCoeff(&best);
  if (!has_best_ || f < record_.best_f) {
    record_.best_f = f;
    record_.best_x = pop.row(static_cast<int>(best));
    has_best_ = true;
  }
}

void RunRecorder::observe(const Population& pop) {
  update_best(pop);
  if (options_.record_history) record_.history.push_back(pop.positions);
}

void RunRecorder::record(const Population& pop, const KdeModel* model) {
  update_best(pop);
  const double entropy = model ? model->entropy(pop.positions)
                               : population_entropy(pop.positions, metric_bandwidth_);
  const double mean_f = pop.fitness.mean();
  auto& tr = record_.traces;
  tr.best_f.push_back(record_.best_f);
  tr.mean_f.push_back(mean_f);
  tr.entropy.push_back(entropy);
  tr.free_energy.push_back(mean_f - entropy / options_.metric_beta);
  tr.diversity.push_back(diversity(pop.positions));
  if (options_.record_history) record_.history.push_back(pop.positions);
}

RunRecord RunRecorder::finish(Population final_population) {
  record_.final_population = std::move(final_population);
  record_.wall_time = std::chrono::steady_clock::now() - start_;
  return std::move(record_);
}

} // namespace wevo
