#include "wevo/baselines.hpp"
#include "wevo/functions.hpp"

#include <algorithm>
#include <cmath>

namespace wevo::sade {

State initial_state(const Params& params) {
  if (params.learning_period < 1) throw ConfigError("sade: learning period must be at least 1");
  State s;
  s.probability.fill(1.0 / strategy_count);
  s.cr_median.fill(params.cr0);
  return s;
}

namespace {

double sample_f(const Params& params, Rng& rng) {
  std::normal_distribution<double> dist(params.f_mean, params.f_sd);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double f = dist(rng);
    if (f > 0.0 && f <= 2.0) return f;
  }
  return params.f_mean;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

GenerationResult generation(const State& state, const Population& pop, const Params& params,
                            const Objective& objective, Rng& rng) {
  const int n = pop.size();
  if (n < 5) throw ConfigError("sade: population size must be at least 5");
  Eigen::Index best = 0;
  pop.fitness.minCoeff(&best);
  const Vector x_best = pop.row(static_cast<int>(best));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GenerationResult out{state, pop};
  std::array<int, strategy_count> wins{0, 0};
  std::array<int, strategy_count> losses{0, 0};
  std::array<std::vector<double>, strategy_count> good_cr;

  for (int i = 0; i < n; ++i) {
    const int k = unit(rng) < state.probability[rand1_bin] ? rand1_bin : current_to_best2_bin;
    std::normal_distribution<double> cr_dist(state.cr_median[static_cast<std::size_t>(k)], params.cr_sd);
    const double cr = std::clamp(cr_dist(rng), 0.0, 1.0);
    const double f = sample_f(params, rng);
    const Vector xi = pop.row(i);
    Vector mutant;
    if (k == rand1_bin) {
      const auto r = pick_distinct(n, 3, {i}, rng);
      mutant = pop.row(r[0]) + f * (pop.row(r[1]) - pop.row(r[2]));
    } else {
      const auto r = pick_distinct(n, 4, {i}, rng);
      mutant = xi + f * (x_best - xi) + f * (pop.row(r[0]) - pop.row(r[1])) +
               f * (pop.row(r[2]) - pop.row(r[3]));
    }
    const Vector trial = objective.clamp(binomial_crossover(xi, mutant, cr, rng));
    const double ft = objective.value(trial);
    const auto slot = static_cast<std::size_t>(k);
    if (ft <= pop.fitness[i]) {
      out.population.positions.row(i) = trial.transpose();
      out.population.fitness[i] = ft;
      ++wins[slot];
      good_cr[slot].push_back(cr);
    } else {
      ++losses[slot];
    }
  }
  out.population.generation = pop.generation + 1;

  State& s = out.state;
  s.successes.push_back(wins);
  s.failures.push_back(losses);
  s.successful_cr.push_back(std::move(good_cr));
  const auto period = static_cast<std::size_t>(params.learning_period);
  while (s.successes.size() > period) {
    s.successes.pop_front();
    s.failures.pop_front();
    s.successful_cr.pop_front();
  }
  s.generation = state.generation + 1;

  if (s.generation >= params.learning_period) {
    std::array<double, strategy_count> rate{};
    double total = 0.0;
    for (std::size_t k = 0; k < strategy_count; ++k) {
      double ns = 0.0, nf = 0.0;
      std::vector<double> crs;
      for (std::size_t g = 0; g < s.successes.size(); ++g) {
        ns += s.successes[g][k];
        nf += s.failures[g][k];
        crs.insert(crs.end(), s.successful_cr[g][k].begin(), s.successful_cr[g][k].end());
      }
      rate[k] = (ns + nf > 0.0 ? ns / (ns + nf) : 0.0) + params.epsilon;
      total += rate[k];
      if (!crs.empty()) s.cr_median[k] = median(std::move(crs));
    }
    for (std::size_t k = 0; k < strategy_count; ++k) s.probability[k] = rate[k] / total;
  }
  return out;
}

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options) {
  check_run_options(options, 5);
  RunRecorder recorder("sade", objective, options);
  Rng rng(options.seed);
  Population pop = evaluate_population(uniform_positions(objective, options.n, rng), objective);
  recorder.observe(pop);
  State state = initial_state(params);
  for (int t = 0; t < options.generations; ++t) {
    auto result = generation(state, pop, params, objective, rng);
    state = std::move(result.state);
    pop = std::move(result.population);
    recorder.record(pop);
  }
  return recorder.finish(std::move(pop));
}

} // namespace wevo::sade
