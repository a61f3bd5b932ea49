#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace wevo {

using Vector = Eigen::VectorXd;
/// Row-major semantics: one point per row.
using Matrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

/// Bad input to an operation (dimension mismatch, out-of-range parameter).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid experiment or optimizer configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Catalog lookup failure.
class NotFoundError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Non-finite values produced while evaluating objectives or forces.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string format_vector(const Vector& x);

} // namespace wevo
