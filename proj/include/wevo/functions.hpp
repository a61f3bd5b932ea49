#pragma once

#include "wevo/types.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace wevo {

struct KnownOptimum {
  Vector position;
  double value = 0.0;
};

/// Which comparison table an objective belongs to.
enum class Suite { benchmark, invariance, auxiliary };

std::string_view to_string(Suite suite);

/// Central differences, one step size per coordinate.
/// Throws NumericError when f is non-finite at a probe point.
Vector finite_diff_gradient(const std::function<double(const Vector&)>& f,
                            const Vector& x, const Vector& h);
Vector finite_diff_gradient(const std::function<double(const Vector&)>& f,
                            const Vector& x, double h);

/// A box-bounded objective with an analytic (or finite-difference) gradient.
///
/// Objectives are immutable after construction and can be shared freely
/// between threads. Evaluation is total: points outside the bounds are
/// evaluated like any other point; optimizers enforce the box.
class Objective {
public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  /// An empty gradient falls back to central differences with
  /// h = 1e-6 * (hi - lo) per coordinate.
  Objective(std::string id, std::string name, Vector lower, Vector upper,
            ValueFn value, GradientFn gradient = {},
            std::vector<KnownOptimum> optima = {},
            Suite suite = Suite::auxiliary);

  const std::string& id() const { return id_; }
  const std::string& name() const { return name_; }
  Suite suite() const { return suite_; }
  int dim() const { return static_cast<int>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Vector range() const { return upper_ - lower_; }
  bool has_analytic_gradient() const { return static_cast<bool>(gradient_); }
  const std::vector<KnownOptimum>& known_optima() const { return optima_; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  /// Gradient by central differences regardless of the analytic form.
  Vector numeric_gradient(const Vector& x) const;

  bool contains(const Vector& x) const;
  Vector clamp(const Vector& x) const;

private:
  void check_dim(const Vector& x) const;

  std::string id_;
  std::string name_;
  Vector lower_;
  Vector upper_;
  ValueFn value_;
  GradientFn gradient_;
  std::vector<KnownOptimum> optima_;
  Suite suite_;
};

/// Affine maps x -> x' used to build the invariance suite. A transformed
/// objective evaluates f(apply(x)).
class AffineTransform {
public:
  enum class Kind { identity, translate, rotate, scale, composite };

  static AffineTransform identity(int dim);
  /// x' = x - offset.
  static AffineTransform translate(Vector offset);
  /// x' = R(angle) x, counter-clockwise; 2D only.
  static AffineTransform rotate(double angle_deg);
  /// x' = diag(factors) x; factors must be strictly positive.
  static AffineTransform scale(Vector factors);
  /// Applies the children in sequence order.
  static AffineTransform composite(std::vector<AffineTransform> sequence);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Vector& offset() const { return offset_; }
  double rotation_angle_deg() const { return angle_deg_; }
  const Vector& scale_factors() const { return factors_; }
  const std::vector<AffineTransform>& sequence() const { return sequence_; }

  Vector apply(const Vector& x) const;
  /// Jacobian of apply (constant for an affine map).
  Matrix linear_part() const;

private:
  AffineTransform(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
  Vector offset_;
  double angle_deg_ = 0.0;
  Vector factors_;
  std::vector<AffineTransform> sequence_;
};

Vector apply_transform(const AffineTransform& t, const Vector& x);

/// f(T x) with gradient T^T grad f(T x); optima are mapped through T^{-1}.
Objective transformed(const Objective& base, const AffineTransform& t,
                      std::string id, std::string name, Suite suite);

namespace objectives {

Objective rastrigin(int dim = 2);
Objective beale();
Objective himmelblau();
Objective six_hump_camel();
Objective holder_table();
Objective periodic_2d();
Objective double_well();
Objective tokamak();

/// Charge placement for the multipole potential.
struct Charge {
  double x;
  double y;
  double sign;
};
/// Defaults: (-1,-1,+), (-1,1,-), (1,1,+), (1,-1,-).
std::vector<Charge> default_multipole_charges();
Objective multipole(std::vector<Charge> charges = default_multipole_charges());
Objective optical_lattice();

/// sum_i (sum_{j<=i} x_j)^2 on [-100, 100]^dim.
Objective schwefel222(int dim = 2);

/// ||x||^2 on [-5, 5]^dim.
Objective sphere(int dim = 2);
/// (x^2 - 1)^2 on [-2, 2].
Objective double_well_1d();

} // namespace objectives

/// The 22 catalog objectives in table order: 10 benchmark functions
/// followed by the Schwefel base function and its 11 transformed variants.
const std::vector<Objective>& list_benchmarks();

/// Objectives resolvable by id that are not part of the suite (sphere,
/// double_well_1d).
const std::vector<Objective>& auxiliary_objectives();

/// Looks up the suite first, then the auxiliary objectives.
/// Throws NotFoundError for unknown ids.
const Objective& lookup(std::string_view id);

} // namespace wevo
