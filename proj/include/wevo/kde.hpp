#pragma once

#include "wevo/types.hpp"

#include <optional>

namespace wevo {

class Objective;

enum class BandwidthRule { scott, silverman, fixed };

struct BandwidthOptions {
  BandwidthRule rule = BandwidthRule::scott;
  /// Bandwidth used by BandwidthRule::fixed (same value in every dimension).
  double fixed = 0.0;
  /// Per-dimension lower bound on h. Empty means 1e-3 in every dimension.
  Vector floor;
};

/// Floor of 1e-3 * (hi - lo) per dimension.
Vector bandwidth_floor(const Objective& objective);
BandwidthOptions bandwidth_options_for(const Objective& objective,
                                       BandwidthRule rule = BandwidthRule::scott);

/// Gaussian product-kernel density estimate with a diagonal bandwidth.
///
/// The model copies its support points, so it stays valid when the source
/// population moves on. All kernel sums run through log-sum-exp.
class KdeModel {
public:
  /// Throws ArgumentError on empty or non-finite input.
  static KdeModel fit(const Matrix& points, const BandwidthOptions& options = {});

  int size() const { return static_cast<int>(samples_.rows()); }
  int dim() const { return static_cast<int>(samples_.cols()); }
  const Matrix& samples() const { return samples_; }
  const Vector& bandwidth() const { return bandwidth_; }
  /// log(N * prod(h) * (2 pi)^(d/2)).
  double log_norm() const { return log_norm_; }

  double log_density(const Vector& x) const;
  /// sum_j w_j(x) (x_j - x) / h^2 with softmax weights over the kernel terms.
  Vector grad_log_density(const Vector& x) const;
  /// Resubstitution estimate -(1/M) sum_i log p(points_i).
  double entropy(const Matrix& points) const;

private:
  KdeModel(Matrix samples, Vector bandwidth);

  /// Fills `logk` with -0.5 ||(x - x_j) / h||^2 and returns its maximum.
  double kernel_exponents(const Vector& x, Matrix& diff, Vector& logk) const;

  Matrix samples_;
  Vector bandwidth_;
  Vector inv_h2_;
  double log_norm_ = 0.0;
};

/// Per-dimension bandwidth for the rule, before flooring.
Vector select_bandwidth(const Matrix& points, BandwidthRule rule, double fixed = 0.0);

} // namespace wevo
