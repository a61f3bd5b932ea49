#include "wevo/kde.hpp"

#include "wevo/functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wevo {

Vector bandwidth_floor(const Objective& objective) { return 1e-3 * objective.range(); }

BandwidthOptions bandwidth_options_for(const Objective& objective, BandwidthRule rule) {
  BandwidthOptions options;
  options.rule = rule;
  options.floor = bandwidth_floor(objective);
  return options;
}

Vector select_bandwidth(const Matrix& points, BandwidthRule rule, double fixed) {
  const auto n = static_cast<double>(points.rows());
  const auto d = static_cast<double>(points.cols());
  if (rule == BandwidthRule::fixed) {
    if (!(fixed > 0.0)) throw ArgumentError("fixed bandwidth must be positive");
    return Vector::Constant(points.cols(), fixed);
  }
  Vector sd = Vector::Zero(points.cols());
  if (points.rows() > 1) {
    const Eigen::RowVectorXd mean = points.colwise().mean();
    sd = ((points.rowwise() - mean).array().square().colwise().sum() / (n - 1.0)).sqrt();
  }
  double factor = std::pow(n, -1.0 / (d + 4.0));
  if (rule == BandwidthRule::silverman) factor *= std::pow(4.0 / (d + 2.0), 1.0 / (d + 4.0));
  return sd * factor;
}

KdeModel::KdeModel(Matrix samples, Vector bandwidth)
    : samples_(std::move(samples)), bandwidth_(std::move(bandwidth)) {
  inv_h2_ = bandwidth_.array().square().inverse();
  const double d = static_cast<double>(samples_.cols());
  log_norm_ = std::log(static_cast<double>(samples_.rows())) + bandwidth_.array().log().sum() +
              0.5 * d * std::log(2.0 * std::numbers::pi);
}

KdeModel KdeModel::fit(const Matrix& points, const BandwidthOptions& options) {
  if (points.rows() < 1 || points.cols() < 1) throw ArgumentError("kde fit: need at least one point");
  if (!points.allFinite()) throw ArgumentError("kde fit: non-finite sample");
  Vector floor = options.floor.size() ? options.floor : Vector::Constant(points.cols(), 1e-3);
  if (floor.size() != points.cols()) throw ArgumentError("kde fit: floor dimension mismatch");
  if ((floor.array() <= 0.0).any()) throw ArgumentError("kde fit: floor must be positive");
  Vector h = select_bandwidth(points, options.rule, options.fixed).cwiseMax(floor);
  return KdeModel(points, std::move(h));
}

namespace {

// exp() of anything below this is a denormal or zero; flooring keeps the
// sums fast and changes them by less than 1e-300 relative to the peak term.
constexpr double underflow_floor = -700.0;

} // namespace

double KdeModel::kernel_exponents(const Vector& x, Matrix& diff, Vector& logk) const {
  if (x.size() != samples_.cols()) throw ArgumentError("kde query: dimension mismatch");
  diff = samples_.rowwise() - x.transpose();
  logk = -0.5 * (diff.array().square().rowwise() * inv_h2_.transpose().array()).rowwise().sum();
  const double peak = logk.maxCoeff();
  logk = (logk.array() - peak).max(underflow_floor);
  return peak;
}

double KdeModel::log_density(const Vector& x) const {
  Matrix diff;
  Vector logk;
  const double peak = kernel_exponents(x, diff, logk);
  return peak + std::log(logk.array().exp().sum()) - log_norm_;
}

Vector KdeModel::grad_log_density(const Vector& x) const {
  Matrix diff;
  Vector logk;
  kernel_exponents(x, diff, logk);
  const Vector w = logk.array().exp();
  return (diff.transpose() * w / w.sum()).cwiseProduct(inv_h2_);
}

double KdeModel::entropy(const Matrix& points) const {
  if (points.cols() != samples_.cols()) throw ArgumentError("kde entropy: dimension mismatch");
  if (points.rows() < 1) throw ArgumentError("kde entropy: need at least one point");
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) total += log_density(points.row(i).transpose());
  return -total / static_cast<double>(points.rows());
}

} // namespace wevo
