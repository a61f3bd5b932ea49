#pragma once

#include "wevo/population.hpp"

#include <array>
#include <deque>
#include <functional>
#include <utility>
#include <vector>

namespace wevo {

class Objective;

/// Draws `count` distinct indices from [0, n) that avoid `exclude`.
std::vector<int> pick_distinct(int n, int count, const std::vector<int>& exclude, Rng& rng);

/// Binomial crossover: mutant gene where rand() <= cr or j == j_rand.
Vector binomial_crossover(const Vector& target, const Vector& mutant, double cr, Rng& rng);

namespace de {

/// rand/1/bin.
struct Params {
  double F = 0.5;
  double CR = 0.9;

  void validate() const;
};

/// x_r1 + F (x_r2 - x_r3).
Vector rand1_mutant(const Vector& r1, const Vector& r2, const Vector& r3, double F);

/// Mutation, crossover, clamping and greedy selection (the trial replaces
/// its parent when f(trial) <= f(parent)). Needs N >= 4.
Population generation(const Population& pop, const Params& params, const Objective& objective, Rng& rng);

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options);

} // namespace de

namespace ga {

/// Real-coded GA: tournament selection, BLX-alpha crossover, Gaussian
/// mutation and elitism.
struct Params {
  int tournament_size = 2;
  double crossover_rate = 0.9;
  double blx_alpha = 0.5;
  /// Per-gene mutation probability; negative means 1/d.
  double mutation_rate = -1.0;
  /// Mutation standard deviation as a fraction of (hi - lo).
  double mutation_scale = 0.1;
  /// The scale shrinks as (1 - t/T)^mutation_decay over a run; 0 keeps it
  /// constant.
  double mutation_decay = 2.0;
  int elites = 1;

  void validate() const;
};

/// Index of the tournament winner.
int tournament(const Population& pop, int size, Rng& rng);

/// Crossover and mutation of two parents; children are clamped to the box.
/// `progress` is t/T and only matters when mutation_decay > 0.
std::pair<Vector, Vector> breed(const Vector& p1, const Vector& p2, const Params& params,
                                const Objective& objective, Rng& rng, double progress = 0.0);

/// Needs an even N >= 2.
Population generation(const Population& pop, const Params& params, const Objective& objective, Rng& rng,
                      double progress = 0.0);

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options);

} // namespace ga

namespace cmaes {

/// Zero or negative entries select the standard defaults.
struct Params {
  /// Offspring per generation; 0 means max(4 + floor(3 ln d), N).
  int lambda = 0;
  /// Parents; 0 means lambda / 2.
  int mu = 0;
  /// Recombination weights (normalized internally); empty means log-rank.
  std::vector<double> weights;
  double c_m = 1.0;
  double c_1 = -1.0;
  double c_mu = -1.0;
  double c_sigma = -1.0;
  double d_sigma = -1.0;
  double c_c = -1.0;
  /// Initial step size as a fraction of the widest box side.
  double sigma0 = 0.3;
};

struct State {
  Vector mean;
  double sigma = 1.0;
  Matrix C;
  /// Eigenbasis and square-root eigenvalues of C.
  Matrix B;
  Vector D;
  Vector p_sigma;
  Vector p_c;
  Vector weights;
  int lambda = 0;
  int mu = 0;
  double mu_eff = 0.0;
  double c_m = 1.0;
  double c_1 = 0.0;
  double c_mu = 0.0;
  double c_sigma = 0.0;
  double d_sigma = 0.0;
  double c_c = 0.0;
  double chi_n = 0.0;
  int generation = 0;
};

/// Resolves defaults for dimension `dim` and population size `n`.
State initial_state(const Vector& mean, double sigma, const Params& params, int n);

struct GenerationResult {
  State state;
  /// The lambda clamped offspring with their fitness.
  Population offspring;
};

/// Sample, rank, recombine, adapt paths, covariance and step size, then
/// repair C to symmetric positive definite.
GenerationResult generation(const State& state, const Objective& objective, Rng& rng);

/// Smallest eigenvalue of C.
double min_eigenvalue(const State& state);

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options);

/// As run(), also calling `inspect` on the state after every generation.
RunRecord run(const Objective& objective, const Params& params, const RunOptions& options,
              const std::function<void(const State&)>& inspect);

} // namespace cmaes

namespace jade {

/// current-to-pbest/1/bin with an optional archive.
struct Params {
  double p = 0.05;
  double c = 0.1;
  double mu_cr0 = 0.5;
  double mu_f0 = 0.5;
  /// 0 means N.
  int archive_size = 0;
};

struct State {
  double mu_cr = 0.5;
  double mu_f = 0.5;
  /// Replaced parents, one per row.
  Matrix archive;
};

State initial_state(const Params& params, int dim);

struct GenerationResult {
  State state;
  Population population;
};

/// Needs N >= 4.
GenerationResult generation(const State& state, const Population& pop, const Params& params,
                            const Objective& objective, Rng& rng);

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options);

} // namespace jade

namespace sade {

enum Strategy { rand1_bin = 0, current_to_best2_bin = 1 };
constexpr int strategy_count = 2;

struct Params {
  int learning_period = 50;
  double f_mean = 0.5;
  double f_sd = 0.3;
  double cr_sd = 0.1;
  double cr0 = 0.5;
  /// Added to every strategy success rate so no strategy dies out.
  double epsilon = 0.01;
};

struct State {
  std::array<double, strategy_count> probability{0.5, 0.5};
  std::array<double, strategy_count> cr_median{0.5, 0.5};
  /// Per-generation success/failure counts and successful CR values,
  /// newest last, at most learning_period entries.
  std::deque<std::array<int, strategy_count>> successes;
  std::deque<std::array<int, strategy_count>> failures;
  std::deque<std::array<std::vector<double>, strategy_count>> successful_cr;
  int generation = 0;
};

State initial_state(const Params& params);

struct GenerationResult {
  State state;
  Population population;
};

/// Needs N >= 5.
GenerationResult generation(const State& state, const Population& pop, const Params& params,
                            const Objective& objective, Rng& rng);

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options);

} // namespace sade

} // namespace wevo
