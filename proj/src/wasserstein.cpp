#include "wevo/wasserstein.hpp"

#include "wevo/functions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <sstream>

namespace wevo::we {

void Schedule::validate() const {
  if (!(beta_min > 0.0)) throw ArgumentError("schedule: beta_min must be positive");
  if (!(beta_max >= beta_min)) throw ArgumentError("schedule: beta_max must be >= beta_min");
  if (!(eta0 > 0.0)) throw ArgumentError("schedule: eta0 must be positive");
  if (horizon < 1) throw ArgumentError("schedule: horizon must be at least 1");
}

double Schedule::beta_at(int t) const {
  if (t < 0 || t >= horizon) {
    std::ostringstream msg;
    msg << "beta_at: generation " << t << " outside [0, " << horizon << ")";
    throw ArgumentError(msg.str());
  }
  if (horizon == 1 || beta_kind == BetaKind::constant) return beta_min;
  const double frac = static_cast<double>(t) / static_cast<double>(horizon - 1);
  double beta = beta_min;
  if (beta_kind == BetaKind::linear) {
    beta = beta_min + (beta_max - beta_min) * frac;
  } else {
    beta = beta_min * std::pow(beta_max / beta_min, frac);
  }
  return std::clamp(beta, beta_min, beta_max);
}

double Schedule::eta_at(int t) const {
  if (t < 0 || t >= horizon) throw ArgumentError("eta_at: generation outside the horizon");
  if (eta_kind == EtaKind::constant) return eta0;
  return eta0 / (1.0 + static_cast<double>(t) / static_cast<double>(horizon));
}

double beta_at(const Schedule& schedule, int t) { return schedule.beta_at(t); }

double typical_curvature(const Objective& objective) {
  const int d = objective.dim();
  // Cell centres of a regular grid, so symmetric domains never sample the
  // kinks of |x|-type terms at the origin.
  const int per_dim = std::max(3, static_cast<int>(std::floor(std::pow(1024.0, 1.0 / d))));
  const Vector cell = objective.range() / per_dim;
  const Vector h = 1e-4 * objective.range();
  std::vector<double> norms;
  std::vector<int> index(static_cast<std::size_t>(d), 0);
  Matrix hessian(d, d);
  while (true) {
    Vector x(d);
    for (int j = 0; j < d; ++j) x[j] = objective.lower()[j] + (index[static_cast<std::size_t>(j)] + 0.5) * cell[j];
    for (int j = 0; j < d; ++j) {
      Vector up = x, down = x;
      up[j] += h[j];
      down[j] -= h[j];
      hessian.col(j) = (objective.gradient(up) - objective.gradient(down)) / (2.0 * h[j]);
    }
    const Matrix sym = 0.5 * (hessian + hessian.transpose());
    const double norm = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .cwiseAbs()
                            .maxCoeff();
    if (std::isfinite(norm)) norms.push_back(norm);
    int j = 0;
    while (j < d && ++index[static_cast<std::size_t>(j)] == per_dim) index[static_cast<std::size_t>(j++)] = 0;
    if (j == d) break;
  }
  if (norms.empty()) return 0.0;
  const auto mid = norms.begin() + static_cast<std::ptrdiff_t>(norms.size() / 2);
  std::nth_element(norms.begin(), mid, norms.end());
  return *mid;
}

double default_eta(const Objective& objective) {
  const double domain_eta = 0.005 * objective.range().maxCoeff();
  const double lipschitz = typical_curvature(objective);
  return lipschitz > 0.0 ? std::min(domain_eta, 1.0 / lipschitz) : domain_eta;
}

Schedule default_schedule(const Objective& objective, int horizon) {
  Schedule s;
  s.horizon = horizon;
  s.eta0 = default_eta(objective);
  return s;
}

Options default_options(const Objective& objective, int horizon) {
  Options o;
  o.schedule = default_schedule(objective, horizon);
  o.bandwidth = bandwidth_options_for(objective);
  // The force floor only has to keep log-density finite. At 1e-3 of the box
  // it exceeds the Boltzmann width at beta = 100 on the Schwefel suite and
  // the repulsion can no longer hold the particles apart.
  o.bandwidth.floor = 1e-6 * objective.range();
  return o;
}

Vector project(const Vector& x, const Objective& objective, Boundary boundary) {
  if (boundary == Boundary::clamp) return objective.clamp(x);
  Vector y = x;
  const Vector& lo = objective.lower();
  const Vector& hi = objective.upper();
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    const double width = hi[k] - lo[k];
    if (!std::isfinite(y[k])) continue;
    // Fold into [lo, hi] by mirroring at the walls.
    double u = std::fmod(y[k] - lo[k], 2.0 * width);
    if (u < 0.0) u += 2.0 * width;
    y[k] = lo[k] + (u <= width ? u : 2.0 * width - u);
  }
  return objective.clamp(y);
}

namespace {

BandwidthOptions with_floor(BandwidthOptions options, const Objective& objective) {
  if (options.floor.size() == 0) options.floor = bandwidth_floor(objective);
  return options;
}

Vector net_force(const Vector& x, int index, const Objective& objective, double beta,
                 const KdeModel& density) {
  const Vector g_fit = objective.gradient(x);
  const Vector g_ent = density.grad_log_density(x);
  Vector force = -g_fit - g_ent / beta;
  if (!force.allFinite()) {
    std::ostringstream msg;
    msg << objective.id() << ": non-finite force on particle " << index << " at "
        << format_vector(x);
    throw NumericError(msg.str());
  }
  return force;
}

} // namespace

Population step(const Population& pop, const Objective& objective, double beta, double eta,
                const KdeModel& density, Boundary boundary) {
  if (!(beta > 0.0)) throw ArgumentError("we step: beta must be positive");
  if (!(eta > 0.0)) throw ArgumentError("we step: eta must be positive");
  if (pop.size() < 1) throw ArgumentError("we step: empty population");
  Matrix next(pop.size(), pop.dim());
  for (int i = 0; i < pop.size(); ++i) {
    const Vector x = pop.row(i);
    const Vector moved = x + eta * net_force(x, i, objective, beta, density);
    next.row(i) = project(moved, objective, boundary).transpose();
  }
  return evaluate_population(std::move(next), objective, pop.generation + 1);
}

Population step(const Population& pop, const Objective& objective, double beta, double eta,
                const BandwidthOptions& bandwidth, Boundary boundary) {
  if (pop.size() < 1) throw ArgumentError("we step: empty population");
  const KdeModel density = KdeModel::fit(pop.positions, with_floor(bandwidth, objective));
  return step(pop, objective, beta, eta, density, boundary);
}

RunRecord run(const Objective& objective, const Options& options, const RunOptions& run_options) {
  const Schedule& schedule = options.schedule;
  schedule.validate();
  RunOptions effective = run_options;
  effective.generations = schedule.horizon;
  check_run_options(effective);

  const BandwidthOptions bandwidth = with_floor(options.bandwidth, objective);
  RunRecorder recorder("we", objective, effective);
  const bool share_density = bandwidth == recorder.metric_bandwidth();

  Rng rng(effective.seed);
  Population pop = evaluate_population(uniform_positions(objective, effective.n, rng), objective);
  recorder.observe(pop);

  KdeModel density = KdeModel::fit(pop.positions, bandwidth);
  for (int t = 0; t < schedule.horizon; ++t) {
    try {
      pop = step(pop, objective, schedule.beta_at(t), schedule.eta_at(t), density, options.boundary);
    } catch (const NumericError& e) {
      throw NumericError("generation " + std::to_string(t) + ": " + e.what());
    }
    density = KdeModel::fit(pop.positions, bandwidth);
    recorder.record(pop, share_density ? &density : nullptr);
  }
  return recorder.finish(std::move(pop));
}

RunRecord run(const Objective& objective, int n, const Schedule& schedule, std::uint64_t seed) {
  Options options = default_options(objective, schedule.horizon);
  options.schedule = schedule;
  RunOptions run_options;
  run_options.n = n;
  run_options.seed = seed;
  return run(objective, options, run_options);
}

double equilibrium_residual(const Population& pop, const Objective& objective, double beta,
                            const BandwidthOptions& bandwidth) {
  if (pop.size() < 1) throw ArgumentError("equilibrium_residual: empty population");
  if (!(beta > 0.0)) throw ArgumentError("equilibrium_residual: beta must be positive");
  const KdeModel density = KdeModel::fit(pop.positions, with_floor(bandwidth, objective));
  double total = 0.0;
  for (int i = 0; i < pop.size(); ++i) total += net_force(pop.row(i), i, objective, beta, density).norm();
  return total / pop.size();
}

} // namespace wevo::we
