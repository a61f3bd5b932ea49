#include "wevo/baselines.hpp"
#include "wevo/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wevo::cmaes {

namespace {

void decompose(State& s) {
  s.C = 0.5 * (s.C + s.C.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s.C);
  if (eig.info() != Eigen::Success || !eig.eigenvalues().allFinite())
    throw NumericError("cmaes: covariance eigendecomposition failed");
  Vector values = eig.eigenvalues();
  const double top = values.maxCoeff();
  if (!(top > 0.0)) throw NumericError("cmaes: covariance has no positive eigenvalue");
  const double floor = 1e-14 * top;
  if (values.minCoeff() < floor) {
    values = values.cwiseMax(floor);
    s.C = eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
    s.C = 0.5 * (s.C + s.C.transpose());
  }
  s.B = eig.eigenvectors();
  s.D = values.cwiseSqrt();
}

} // namespace

State initial_state(const Vector& mean, double sigma, const Params& params, int n) {
  const int d = static_cast<int>(mean.size());
  if (d < 1) throw ConfigError("cmaes: empty mean");
  if (!(sigma > 0.0)) throw ConfigError("cmaes: sigma must be positive");
  State s;
  s.mean = mean;
  s.sigma = sigma;
  s.lambda = params.lambda > 0 ? params.lambda
                               : std::max(4 + static_cast<int>(std::floor(3.0 * std::log(d))), n);
  s.mu = params.mu > 0 ? params.mu : s.lambda / 2;
  if (s.mu > s.lambda || s.mu < 1) throw ConfigError("cmaes: need 1 <= mu <= lambda");

  s.weights.resize(s.mu);
  if (params.weights.empty()) {
    for (int i = 0; i < s.mu; ++i) s.weights[i] = std::log((s.lambda + 1.0) / 2.0) - std::log(i + 1.0);
  } else {
    if (static_cast<int>(params.weights.size()) != s.mu) throw ConfigError("cmaes: need one weight per parent");
    for (int i = 0; i < s.mu; ++i) s.weights[i] = params.weights[static_cast<std::size_t>(i)];
  }
  if ((s.weights.array() <= 0.0).any()) throw ConfigError("cmaes: weights must be positive");
  s.weights /= s.weights.sum();
  s.mu_eff = 1.0 / s.weights.squaredNorm();

  const double dd = d;
  const double me = s.mu_eff;
  s.c_m = params.c_m;
  s.c_sigma = params.c_sigma >= 0.0 ? params.c_sigma : (me + 2.0) / (dd + me + 5.0);
  s.d_sigma = params.d_sigma > 0.0
                  ? params.d_sigma
                  : 1.0 + 2.0 * std::max(0.0, std::sqrt((me - 1.0) / (dd + 1.0)) - 1.0) + s.c_sigma;
  s.c_c = params.c_c >= 0.0 ? params.c_c : (4.0 + me / dd) / (dd + 4.0 + 2.0 * me / dd);
  s.c_1 = params.c_1 >= 0.0 ? params.c_1 : 2.0 / ((dd + 1.3) * (dd + 1.3) + me);
  s.c_mu = params.c_mu >= 0.0
               ? params.c_mu
               : std::min(1.0 - s.c_1, 2.0 * (me - 2.0 + 1.0 / me) / ((dd + 2.0) * (dd + 2.0) + me));
  if (s.c_1 + s.c_mu > 1.0) throw ConfigError("cmaes: c_1 + c_mu must not exceed 1");
  if (!(s.c_m > 0.0 && s.c_m <= 1.0)) throw ConfigError("cmaes: c_m must lie in (0, 1]");
  s.chi_n = std::sqrt(dd) * (1.0 - 1.0 / (4.0 * dd) + 1.0 / (21.0 * dd * dd));

  s.C = Matrix::Identity(d, d);
  s.p_sigma = Vector::Zero(d);
  s.p_c = Vector::Zero(d);
  decompose(s);
  return s;
}

GenerationResult generation(const State& state, const Objective& objective, Rng& rng) {
  const int d = static_cast<int>(state.mean.size());
  if (d != objective.dim()) throw ArgumentError("cmaes: state and objective dimensions differ");
  std::normal_distribution<double> gauss(0.0, 1.0);

  Matrix x(state.lambda, d);
  for (int k = 0; k < state.lambda; ++k) {
    Vector z(d);
    for (int j = 0; j < d; ++j) z[j] = gauss(rng);
    const Vector sample = state.mean + state.sigma * (state.B * state.D.cwiseProduct(z));
    x.row(k) = objective.clamp(sample).transpose();
  }
  Population offspring = evaluate_population(std::move(x), objective, state.generation + 1);

  std::vector<int> order(static_cast<std::size_t>(state.lambda));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return offspring.fitness[a] < offspring.fitness[b]; });

  State s = state;
  Matrix y(state.mu, d);
  for (int i = 0; i < state.mu; ++i)
    y.row(i) = (offspring.row(order[static_cast<std::size_t>(i)]) - state.mean).transpose() / state.sigma;
  const Vector y_w = y.transpose() * state.weights;

  s.mean = state.mean + state.c_m * state.sigma * y_w;

  const Matrix inv_sqrt_c = state.B * state.D.cwiseInverse().asDiagonal() * state.B.transpose();
  s.p_sigma = (1.0 - s.c_sigma) * state.p_sigma +
              std::sqrt(s.c_sigma * (2.0 - s.c_sigma) * s.mu_eff) * (inv_sqrt_c * y_w);
  const double g = state.generation + 1.0;
  const double ps_norm = s.p_sigma.norm();
  const bool h_sigma = ps_norm / std::sqrt(1.0 - std::pow(1.0 - s.c_sigma, 2.0 * g)) <
                       (1.4 + 2.0 / (d + 1.0)) * s.chi_n;
  s.p_c = (1.0 - s.c_c) * state.p_c +
          (h_sigma ? std::sqrt(s.c_c * (2.0 - s.c_c) * s.mu_eff) : 0.0) * y_w;

  Matrix rank_mu = Matrix::Zero(d, d);
  for (int i = 0; i < state.mu; ++i) rank_mu += state.weights[i] * y.row(i).transpose() * y.row(i);
  const double stall = h_sigma ? 0.0 : s.c_1 * s.c_c * (2.0 - s.c_c);
  s.C = (1.0 - s.c_1 - s.c_mu + stall) * state.C + s.c_1 * s.p_c * s.p_c.transpose() + s.c_mu * rank_mu;

  s.sigma = state.sigma * std::exp((s.c_sigma / s.d_sigma) * (ps_norm / s.chi_n - 1.0));
  s.sigma = std::max(s.sigma, 1e-300);
  if (!std::isfinite(s.sigma) || !s.mean.allFinite() || !s.C.allFinite())
    throw NumericError("cmaes: non-finite state after update");
  s.generation = state.generation + 1;
  if (s.c_1 > 0.0 || s.c_mu > 0.0 || stall != 0.0) decompose(s);
  return {std::move(s), std::move(offspring)};
}

double min_eigenvalue(const State& state) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(state.C, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options,
              const std::function<void(const State&)>& inspect) {
  check_run_options(options, 1);
  RunRecorder recorder("cmaes", objective, options);
  Rng rng(options.seed);
  const Vector mean = uniform_positions(objective, 1, rng).row(0).transpose();
  State state = initial_state(mean, params.sigma0 * objective.range().maxCoeff(), params, options.n);
  Population pop;
  for (int t = 0; t < options.generations; ++t) {
    auto result = generation(state, objective, rng);
    state = std::move(result.state);
    pop = std::move(result.offspring);
    recorder.record(pop);
    if (inspect) inspect(state);
  }
  return recorder.finish(std::move(pop));
}

RunRecord run(const Objective& objective, const Params& params, const RunOptions& options) {
  return run(objective, params, options, {});
}

} // namespace wevo::cmaes
