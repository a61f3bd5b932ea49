#include "wevo/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wevo {

namespace {

constexpr double pi = std::numbers::pi;

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector filled(int dim, double value) { return Vector::Constant(dim, value); }

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

} // namespace

std::string format_vector(const Vector& x) {
  std::ostringstream out;
  out.precision(10);
  out << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) out << ", ";
    out << x[i];
  }
  out << ')';
  return out.str();
}

std::string_view to_string(Suite suite) {
  switch (suite) {
  case Suite::benchmark: return "benchmark";
  case Suite::invariance: return "invariance";
  case Suite::auxiliary: return "auxiliary";
  }
  return "auxiliary";
}

Vector finite_diff_gradient(const std::function<double(const Vector&)>& f,
                            const Vector& x, const Vector& h) {
  if (h.size() != x.size()) throw ArgumentError("finite_diff_gradient: step size dimension mismatch");
  if ((h.array() <= 0.0).any()) throw ArgumentError("finite_diff_gradient: step size must be positive");
  Vector grad(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h[i];
    const double up = f(probe);
    probe[i] = x[i] - h[i];
    const double down = f(probe);
    probe[i] = x[i];
    if (!std::isfinite(up) || !std::isfinite(down)) {
      std::ostringstream msg;
      msg << "finite_diff_gradient: non-finite objective at coordinate " << i
          << " around " << format_vector(x);
      throw NumericError(msg.str());
    }
    grad[i] = (up - down) / (2.0 * h[i]);
  }
  return grad;
}

Vector finite_diff_gradient(const std::function<double(const Vector&)>& f,
                            const Vector& x, double h) {
  return finite_diff_gradient(f, x, Vector::Constant(x.size(), h));
}

Objective::Objective(std::string id, std::string name, Vector lower, Vector upper,
                     ValueFn value, GradientFn gradient,
                     std::vector<KnownOptimum> optima, Suite suite)
    : id_(std::move(id)), name_(std::move(name)), lower_(std::move(lower)),
      upper_(std::move(upper)), value_(std::move(value)),
      gradient_(std::move(gradient)), optima_(std::move(optima)), suite_(suite) {
  if (lower_.size() == 0 || lower_.size() != upper_.size())
    throw ArgumentError("objective " + id_ + ": bounds must be non-empty and of equal dimension");
  if ((lower_.array() >= upper_.array()).any())
    throw ArgumentError("objective " + id_ + ": every bound needs lo < hi");
  if (!value_) throw ArgumentError("objective " + id_ + ": missing value function");
  for (const auto& opt : optima_) {
    if (opt.position.size() != lower_.size())
      throw ArgumentError("objective " + id_ + ": optimum dimension mismatch");
  }
}

void Objective::check_dim(const Vector& x) const {
  if (x.size() != lower_.size()) {
    std::ostringstream msg;
    msg << "objective " << id_ << ": expected dimension " << lower_.size()
        << ", got " << x.size();
    throw ArgumentError(msg.str());
  }
}

double Objective::value(const Vector& x) const {
  check_dim(x);
  return value_(x);
}

Vector Objective::gradient(const Vector& x) const {
  check_dim(x);
  if (gradient_) return gradient_(x);
  return numeric_gradient(x);
}

Vector Objective::numeric_gradient(const Vector& x) const {
  check_dim(x);
  return finite_diff_gradient(value_, x, Vector(1e-6 * range()));
}

bool Objective::contains(const Vector& x) const {
  check_dim(x);
  return (x.array() >= lower_.array()).all() && (x.array() <= upper_.array()).all();
}

Vector Objective::clamp(const Vector& x) const {
  check_dim(x);
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

// ---------------------------------------------------------------------------
// Transforms

AffineTransform AffineTransform::identity(int dim) {
  if (dim < 1) throw ArgumentError("identity transform needs dim >= 1");
  return AffineTransform(Kind::identity, dim);
}

AffineTransform AffineTransform::translate(Vector offset) {
  if (offset.size() == 0) throw ArgumentError("translate: empty offset");
  AffineTransform t(Kind::translate, static_cast<int>(offset.size()));
  t.offset_ = std::move(offset);
  return t;
}

AffineTransform AffineTransform::rotate(double angle_deg) {
  AffineTransform t(Kind::rotate, 2);
  t.angle_deg_ = angle_deg;
  return t;
}

AffineTransform AffineTransform::scale(Vector factors) {
  if (factors.size() == 0) throw ArgumentError("scale: empty factors");
  if ((factors.array() <= 0.0).any()) throw ArgumentError("scale: factors must be strictly positive");
  AffineTransform t(Kind::scale, static_cast<int>(factors.size()));
  t.factors_ = std::move(factors);
  return t;
}

AffineTransform AffineTransform::composite(std::vector<AffineTransform> sequence) {
  if (sequence.empty()) throw ArgumentError("composite: empty sequence");
  const int dim = sequence.front().dim();
  for (const auto& child : sequence) {
    if (child.dim() != dim) throw ArgumentError("composite: children disagree on dimension");
  }
  AffineTransform t(Kind::composite, dim);
  t.sequence_ = std::move(sequence);
  return t;
}

Vector AffineTransform::apply(const Vector& x) const {
  if (x.size() != dim_) throw ArgumentError("apply_transform: dimension mismatch");
  switch (kind_) {
  case Kind::identity: return x;
  case Kind::translate: return x - offset_;
  case Kind::rotate: return linear_part() * x;
  case Kind::scale: return factors_.cwiseProduct(x);
  case Kind::composite: {
    Vector y = x;
    for (const auto& child : sequence_) y = child.apply(y);
    return y;
  }
  }
  return x;
}

Matrix AffineTransform::linear_part() const {
  switch (kind_) {
  case Kind::identity:
  case Kind::translate: return Matrix::Identity(dim_, dim_);
  case Kind::rotate: {
    const double a = angle_deg_ * pi / 180.0;
    Matrix r(2, 2);
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return r;
  }
  case Kind::scale: return factors_.asDiagonal();
  case Kind::composite: {
    Matrix a = Matrix::Identity(dim_, dim_);
    for (const auto& child : sequence_) a = child.linear_part() * a;
    return a;
  }
  }
  return Matrix::Identity(dim_, dim_);
}

Vector apply_transform(const AffineTransform& t, const Vector& x) { return t.apply(x); }

Objective transformed(const Objective& base, const AffineTransform& t,
                      std::string id, std::string name, Suite suite) {
  if (t.dim() != base.dim()) throw ArgumentError("transformed: dimension mismatch");
  const Matrix a = t.linear_part();
  const Vector b = t.apply(Vector::Zero(t.dim()));
  std::vector<KnownOptimum> optima;
  for (const auto& opt : base.known_optima()) {
    Vector pre = a.fullPivLu().solve(opt.position - b);
    optima.push_back({pre, opt.value});
  }
  auto value = [base, t](const Vector& x) { return base.value(t.apply(x)); };
  auto gradient = [base, t, a](const Vector& x) -> Vector {
    return a.transpose() * base.gradient(t.apply(x));
  };
  return Objective(std::move(id), std::move(name), base.lower(), base.upper(),
                   value, gradient, std::move(optima), suite);
}

// ---------------------------------------------------------------------------
// Catalog

namespace objectives {

Objective rastrigin(int dim) {
  auto value = [](const Vector& x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double xi : x) s += xi * xi - 10.0 * std::cos(2.0 * pi * xi);
    return s;
  };
  auto gradient = [](const Vector& x) -> Vector {
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
      g[i] = 2.0 * x[i] + 20.0 * pi * std::sin(2.0 * pi * x[i]);
    return g;
  };
  return Objective("rastrigin", "Rastrigin", filled(dim, -5.12), filled(dim, 5.12),
                   value, gradient, {{Vector::Zero(dim), 0.0}}, Suite::benchmark);
}

Objective beale() {
  auto value = [](const Vector& v) {
    const double x = v[0], y = v[1];
    const double t1 = 1.5 - x + x * y;
    const double t2 = 2.25 - x + x * y * y;
    const double t3 = 2.625 - x + x * y * y * y;
    return t1 * t1 + t2 * t2 + t3 * t3;
  };
  auto gradient = [](const Vector& v) -> Vector {
    const double x = v[0], y = v[1];
    const double t1 = 1.5 - x + x * y;
    const double t2 = 2.25 - x + x * y * y;
    const double t3 = 2.625 - x + x * y * y * y;
    return vec2(2.0 * t1 * (y - 1.0) + 2.0 * t2 * (y * y - 1.0) + 2.0 * t3 * (y * y * y - 1.0),
                2.0 * t1 * x + 4.0 * t2 * x * y + 6.0 * t3 * x * y * y);
  };
  return Objective("beale", "Beale", filled(2, -4.5), filled(2, 4.5), value, gradient,
                   {{vec2(3.0, 0.5), 0.0}}, Suite::benchmark);
}

Objective himmelblau() {
  auto value = [](const Vector& v) {
    const double a = v[0] * v[0] + v[1] - 11.0;
    const double b = v[0] + v[1] * v[1] - 7.0;
    return a * a + b * b;
  };
  auto gradient = [](const Vector& v) -> Vector {
    const double a = v[0] * v[0] + v[1] - 11.0;
    const double b = v[0] + v[1] * v[1] - 7.0;
    return vec2(4.0 * v[0] * a + 2.0 * b, 2.0 * a + 4.0 * v[1] * b);
  };
  std::vector<KnownOptimum> optima = {
      {vec2(3.0, 2.0), 0.0},
      {vec2(-2.8051180869527448531, 3.1313125182505729658), 0.0},
      {vec2(-3.7793102533777468919, -3.2831859912861694123), 0.0},
      {vec2(3.5844283403304917449, -1.8481265269644035535), 0.0},
  };
  return Objective("himmelblau", "Himmelblau", filled(2, -6.0), filled(2, 6.0), value,
                   gradient, std::move(optima), Suite::benchmark);
}

Objective six_hump_camel() {
  auto value = [](const Vector& v) {
    const double x = v[0], y = v[1];
    const double x2 = x * x, y2 = y * y;
    return (4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2 + x * y + (-4.0 + 4.0 * y2) * y2;
  };
  auto gradient = [](const Vector& v) -> Vector {
    const double x = v[0], y = v[1];
    const double x2 = x * x;
    return vec2(8.0 * x - 8.4 * x2 * x + 2.0 * x2 * x2 * x + y, x - 8.0 * y + 16.0 * y * y * y);
  };
  constexpr double fstar = -1.0316284534898773504;
  std::vector<KnownOptimum> optima = {
      {vec2(0.089842013100318062456, -0.7126564030207396334), fstar},
      {vec2(-0.089842013100318062456, 0.7126564030207396334), fstar},
  };
  Vector lo = vec2(-3.0, -2.0);
  Vector hi = vec2(3.0, 2.0);
  return Objective("six_hump_camel", "Six-Hump Camel", lo, hi, value, gradient,
                   std::move(optima), Suite::benchmark);
}

Objective holder_table() {
  auto value = [](const Vector& v) {
    const double r = std::hypot(v[0], v[1]);
    return -std::abs(std::sin(v[0]) * std::cos(v[1]) * std::exp(std::abs(1.0 - r / pi)));
  };
  // Subgradient convention: sign(0) = 0 inside every |.| term, and x/r = 0 at r = 0.
  auto gradient = [](const Vector& v) -> Vector {
    const double x = v[0], y = v[1];
    const double r = std::hypot(x, y);
    const double u = 1.0 - r / pi;
    const double e = std::exp(std::abs(u));
    const double sx = std::sin(x), cy = std::cos(y);
    const double g = sx * cy * e;
    const double dr_dx = r > 0.0 ? x / r : 0.0;
    const double dr_dy = r > 0.0 ? y / r : 0.0;
    const double de = -sign(u) / pi; // d|u|/dr
    const double gx = std::cos(x) * cy * e + g * de * dr_dx;
    const double gy = -sx * std::sin(y) * e + g * de * dr_dy;
    const double s = -sign(g);
    return vec2(s * gx, s * gy);
  };
  constexpr double fstar = -19.208502567886731832;
  constexpr double xs = 8.0550234757365634198;
  constexpr double ys = 9.66459001924127289;
  std::vector<KnownOptimum> optima = {
      {vec2(xs, ys), fstar}, {vec2(-xs, ys), fstar},
      {vec2(xs, -ys), fstar}, {vec2(-xs, -ys), fstar}};
  return Objective("holder_table", "Holder Table", filled(2, -10.0), filled(2, 10.0),
                   value, gradient, std::move(optima), Suite::benchmark);
}

Objective periodic_2d() {
  constexpr double v0 = 2.0, a = 1.0, lambda = 0.5;
  constexpr double k = 2.0 * pi / a;
  auto value = [](const Vector& v) {
    const double cx = std::cos(k * v[0]), cy = std::cos(k * v[1]);
    return -v0 * (cx + cy + lambda * cx * cy);
  };
  auto gradient = [](const Vector& v) -> Vector {
    const double cx = std::cos(k * v[0]), cy = std::cos(k * v[1]);
    return vec2(v0 * k * std::sin(k * v[0]) * (1.0 + lambda * cy),
                v0 * k * std::sin(k * v[1]) * (1.0 + lambda * cx));
  };
  std::vector<KnownOptimum> optima;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      optima.push_back({vec2(i * a, j * a), -v0 * (2.0 + lambda)});
  return Objective("periodic_2d", "2D Periodic", filled(2, -2.0), filled(2, 2.0), value,
                   gradient, std::move(optima), Suite::benchmark);
}

Objective double_well() {
  constexpr double k = 2.0, ag = 3.0, b = 3.0;
  auto value = [](const Vector& v) {
    const double x = v[0], y = v[1];
    const double w = x * x - 1.0;
    return w * w + 0.5 * k * y * y + ag * std::exp(-b * (x * x + y * y));
  };
  auto gradient = [](const Vector& v) -> Vector {
    const double x = v[0], y = v[1];
    const double bump = ag * std::exp(-b * (x * x + y * y));
    return vec2(4.0 * x * (x * x - 1.0) - 2.0 * b * x * bump, k * y - 2.0 * b * y * bump);
  };
  constexpr double xs = 1.0700513992274225102;
  constexpr double fstar = 0.11770123055233339251;
  std::vector<KnownOptimum> optima = {{vec2(xs, 0.0), fstar}, {vec2(-xs, 0.0), fstar}};
  return Objective("double_well", "Double-Well", filled(2, -2.0), filled(2, 2.0), value,
                   gradient, std::move(optima), Suite::benchmark);
}

Objective tokamak() {
  constexpr double r0 = 2.0, alpha = 0.5, beta = 0.05, eps = 0.8, delta = 0.6;
  constexpr double m = 3.0, n = 2.0;
  auto value = [](const Vector& v) {
    const double r = std::hypot(v[0], v[1]);
    const double th = std::atan2(v[1], v[0]);
    const double d = r - r0;
    return alpha * d * d + beta * d * d * d * d + eps * d * std::cos(m * th) +
           delta * std::cos(n * th);
  };
  auto gradient = [](const Vector& v) -> Vector {
    const double x = v[0], y = v[1];
    const double r = std::hypot(x, y);
    const double th = std::atan2(y, x); // atan2(0, 0) = 0: limit along the x-axis
    const double d = r - r0;
    const double dv_dr = 2.0 * alpha * d + 4.0 * beta * d * d * d + eps * std::cos(m * th);
    const double dv_dth = -eps * d * m * std::sin(m * th) - delta * n * std::sin(n * th);
    if (r == 0.0) return vec2(dv_dr, 0.0);
    const double r2 = r * r;
    return vec2(dv_dr * x / r - dv_dth * y / r2, dv_dr * y / r + dv_dth * x / r2);
  };
  constexpr double fstar = -0.68984406916868921952;
  std::vector<KnownOptimum> optima = {
      {vec2(0.90125358265206884967, 2.4810808815194828638), fstar},
      {vec2(0.90125358265206884967, -2.4810808815194828638), fstar},
      {vec2(-0.4644369222551581129, 1.2785586550326908421), fstar},
      {vec2(-0.4644369222551581129, -1.2785586550326908421), fstar},
  };
  return Objective("tokamak", "Tokamak", filled(2, -4.0), filled(2, 4.0), value, gradient,
                   std::move(optima), Suite::benchmark);
}

std::vector<Charge> default_multipole_charges() {
  return {{-1.0, -1.0, 1.0}, {-1.0, 1.0, -1.0}, {1.0, 1.0, 1.0}, {1.0, -1.0, -1.0}};
}

Objective multipole(std::vector<Charge> charges) {
  constexpr double q = 1.0, eps0 = 1.0, delta = 0.3;
  constexpr double coulomb = q / (4.0 * pi * eps0);
  auto value = [charges](const Vector& v) {
    double s = 0.0;
    for (const auto& c : charges) {
      const double dx = v[0] - c.x, dy = v[1] - c.y;
      s += c.sign * coulomb / std::sqrt(dx * dx + dy * dy + delta * delta);
    }
    return s;
  };
  auto gradient = [charges](const Vector& v) -> Vector {
    Vector g = Vector::Zero(2);
    for (const auto& c : charges) {
      const double dx = v[0] - c.x, dy = v[1] - c.y;
      const double rho2 = dx * dx + dy * dy + delta * delta;
      const double w = -c.sign * coulomb / (rho2 * std::sqrt(rho2));
      g[0] += w * dx;
      g[1] += w * dy;
    }
    return g;
  };
  std::vector<KnownOptimum> optima;
  const auto defaults = default_multipole_charges();
  const bool is_default =
      charges.size() == defaults.size() &&
      std::equal(charges.begin(), charges.end(), defaults.begin(), [](const Charge& a, const Charge& b) {
        return a.x == b.x && a.y == b.y && a.sign == b.sign;
      });
  if (is_default) {
    constexpr double p = 1.004180919047296408;
    constexpr double fstar = -0.21459064678043321833;
    optima = {{vec2(-p, p), fstar}, {vec2(p, -p), fstar}};
  }
  return Objective("multipole", "Multipole", filled(2, -3.0), filled(2, 3.0), value, gradient,
                   std::move(optima), Suite::benchmark);
}

Objective optical_lattice() {
  constexpr double v0 = 3.0, k = 2.0, sigma = 3.0;
  auto value = [](const Vector& v) {
    const double sx = std::sin(k * v[0]), sy = std::sin(k * v[1]);
    const double env = std::exp(-(v[0] * v[0] + v[1] * v[1]) / (2.0 * sigma * sigma));
    return v0 * (sx * sx + sy * sy) * env;
  };
  auto gradient = [](const Vector& v) -> Vector {
    const double sx = std::sin(k * v[0]), sy = std::sin(k * v[1]);
    const double s = sx * sx + sy * sy;
    const double env = std::exp(-(v[0] * v[0] + v[1] * v[1]) / (2.0 * sigma * sigma));
    const double inv_s2 = 1.0 / (sigma * sigma);
    return vec2(v0 * env * (k * std::sin(2.0 * k * v[0]) - s * v[0] * inv_s2),
                v0 * env * (k * std::sin(2.0 * k * v[1]) - s * v[1] * inv_s2));
  };
  // Zeros of both sines inside [-4, 4]: multiples of pi/2 up to pi.
  std::vector<KnownOptimum> optima;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      optima.push_back({vec2(i * pi / 2.0, j * pi / 2.0), 0.0});
  return Objective("optical_lattice", "Optical Lattice", filled(2, -4.0), filled(2, 4.0),
                   value, gradient, std::move(optima), Suite::benchmark);
}

Objective schwefel222(int dim) {
  auto value = [](const Vector& x) {
    double prefix = 0.0, s = 0.0;
    for (double xi : x) {
      prefix += xi;
      s += prefix * prefix;
    }
    return s;
  };
  auto gradient = [](const Vector& x) -> Vector {
    const Eigen::Index n = x.size();
    Vector prefix(n);
    double p = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) prefix[i] = (p += x[i]);
    Vector g(n);
    double tail = 0.0;
    for (Eigen::Index k = n - 1; k >= 0; --k) {
      tail += prefix[k];
      g[k] = 2.0 * tail;
    }
    return g;
  };
  return Objective("schwefel222", "Original Schwefel 2.22", filled(dim, -100.0),
                   filled(dim, 100.0), value, gradient, {{Vector::Zero(dim), 0.0}},
                   Suite::invariance);
}

Objective sphere(int dim) {
  auto value = [](const Vector& x) { return x.squaredNorm(); };
  auto gradient = [](const Vector& x) -> Vector { return 2.0 * x; };
  return Objective("sphere", "Sphere", filled(dim, -5.0), filled(dim, 5.0), value, gradient,
                   {{Vector::Zero(dim), 0.0}}, Suite::auxiliary);
}

Objective double_well_1d() {
  auto value = [](const Vector& x) {
    const double w = x[0] * x[0] - 1.0;
    return w * w;
  };
  auto gradient = [](const Vector& x) -> Vector {
    return Vector::Constant(1, 4.0 * x[0] * (x[0] * x[0] - 1.0));
  };
  return Objective("double_well_1d", "Double-Well 1D", filled(1, -2.0), filled(1, 2.0), value,
                   gradient, {{filled(1, -1.0), 0.0}, {filled(1, 1.0), 0.0}}, Suite::auxiliary);
}

} // namespace objectives

namespace {

std::vector<Objective> build_suite() {
  using T = AffineTransform;
  std::vector<Objective> suite = {
      objectives::rastrigin(),      objectives::beale(),       objectives::himmelblau(),
      objectives::six_hump_camel(), objectives::holder_table(), objectives::periodic_2d(),
      objectives::double_well(),    objectives::tokamak(),     objectives::multipole(),
      objectives::optical_lattice(),
  };

  const Objective base = objectives::schwefel222();
  suite.push_back(base);
  auto variant = [&](const char* id, const char* name, const T& t) {
    suite.push_back(transformed(base, t, id, name, Suite::invariance));
  };
  variant("schwefel222_shift_right_20", "Shift Right 20", T::translate(vec2(20.0, 20.0)));
  variant("schwefel222_shift_left_30", "Shift Left 30", T::translate(vec2(-30.0, -30.0)));
  variant("schwefel222_shift_15_15", "Shift (15, 15)", T::translate(vec2(15.0, 15.0)));
  variant("schwefel222_scale_x2", "Scale x2", T::scale(vec2(0.5, 0.5)));
  variant("schwefel222_scale_x0_5", "Scale x0.5", T::scale(vec2(2.0, 2.0)));
  variant("schwefel222_anisotropic_scale", "Anisotropic Scale", T::scale(vec2(0.6667, 1.25)));
  variant("schwefel222_rotate_45", "Rotate 45", T::rotate(45.0));
  variant("schwefel222_rotate_neg30", "Rotate -30", T::rotate(-30.0));
  variant("schwefel222_rotate_75", "Rotate 75", T::rotate(75.0));
  variant("schwefel222_translate_rotate_scale", "Translate-Rotate-Scale",
          T::composite({T::translate(vec2(10.0, -10.0)), T::rotate(60.0), T::scale(vec2(0.8, 1.2))}));
  variant("schwefel222_rotate_translate_scale", "Rotate-Translate-Scale",
          T::composite({T::rotate(45.0), T::translate(vec2(-15.0, 15.0)), T::scale(vec2(0.7, 1.5))}));
  return suite;
}

} // namespace

const std::vector<Objective>& list_benchmarks() {
  static const std::vector<Objective> suite = build_suite();
  return suite;
}

const std::vector<Objective>& auxiliary_objectives() {
  static const std::vector<Objective> extras = {objectives::sphere(), objectives::double_well_1d()};
  return extras;
}

const Objective& lookup(std::string_view id) {
  for (const auto* list : {&list_benchmarks(), &auxiliary_objectives()}) {
    for (const auto& obj : *list) {
      if (obj.id() == id) return obj;
    }
  }
  throw NotFoundError("unknown function id '" + std::string(id) + "'");
}

} // namespace wevo
