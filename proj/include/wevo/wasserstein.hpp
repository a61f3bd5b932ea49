#pragma once

#include "wevo/kde.hpp"
#include "wevo/population.hpp"

namespace wevo {

class Objective;

namespace we {

enum class BetaKind { linear, geometric, constant };
enum class EtaKind { constant, inverse_decay };
enum class Boundary { clamp, reflect };

/// Inverse-temperature and learning-rate schedule over a horizon of T
/// generations.
struct Schedule {
  double beta_min = 1.0;
  double beta_max = 100.0;
  BetaKind beta_kind = BetaKind::geometric;
  double eta0 = 0.01;
  EtaKind eta_kind = EtaKind::constant;
  int horizon = 500;

  void validate() const;
  /// Non-decreasing in t, within [beta_min, beta_max]. Throws ArgumentError
  /// unless 0 <= t < horizon.
  double beta_at(int t) const;
  /// constant: eta0; inverse_decay: eta0 / (1 + t / T).
  double eta_at(int t) const;
};

double beta_at(const Schedule& schedule, int t);

/// Median over a grid of cell centres (about 1024 points) of the largest
/// |eigenvalue| of a finite-difference Hessian. Isolated stiff corners and
/// singular points do not drag it up.
double typical_curvature(const Objective& objective);

/// min(0.005 * widest side, 1 / typical_curvature): a domain-relative step,
/// cut back where plain gradient descent would overshoot over most of the box.
double default_eta(const Objective& objective);

/// Geometric beta from 1 to 100 and a constant learning rate from
/// default_eta.
Schedule default_schedule(const Objective& objective, int horizon);

struct Options {
  Schedule schedule;
  /// Density estimate driving the entropic force. An empty floor is
  /// replaced by the objective's domain floor.
  BandwidthOptions bandwidth;
  Boundary boundary = Boundary::clamp;
};

/// Options with default_schedule and Scott bandwidth floored at 1e-6 of the
/// objective's box (the entropy metric keeps its 1e-3 floor).
Options default_options(const Objective& objective, int horizon);

/// One synchronous particle update:
///   x_i <- x_i + eta * (-grad f(x_i) - (1/beta) grad log rho(x_i)),
/// with rho fitted once on the incoming population, then projected onto
/// the box. Throws NumericError naming the particle on a non-finite force.
Population step(const Population& pop, const Objective& objective, double beta, double eta,
                const BandwidthOptions& bandwidth = {}, Boundary boundary = Boundary::clamp);

/// Same update against an already fitted density.
Population step(const Population& pop, const Objective& objective, double beta, double eta,
                const KdeModel& density, Boundary boundary = Boundary::clamp);

/// Seeded run: uniform initialization, then schedule.horizon steps.
/// `run_options.generations` is ignored in favour of the schedule horizon.
RunRecord run(const Objective& objective, const Options& options, const RunOptions& run_options);
RunRecord run(const Objective& objective, int n, const Schedule& schedule, std::uint64_t seed);

/// Mean norm of the net force (1/N) sum_i ||grad f(x_i) + (1/beta) grad log rho(x_i)||.
double equilibrium_residual(const Population& pop, const Objective& objective, double beta,
                            const BandwidthOptions& bandwidth = {});

/// Box projection used by step.
Vector project(const Vector& x, const Objective& objective, Boundary boundary);

} // namespace we
} // namespace wevo
