#include "quadsgd/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadsgd/numerics.hpp"

namespace quadsgd {

namespace {

void check_exponents(double alpha, double beta) {
  if (!std::isfinite(alpha) || !(alpha > 1.0)) {
    throw InvalidSpectrumError("alpha must be finite and > 1, got " +
                               std::to_string(alpha));
  }
  if (!std::isfinite(beta) || !(beta > 1.0)) {
    throw InvalidSpectrumError("beta must be finite and > 1, got " +
                               std::to_string(beta));
  }
}

void check_horizon(std::int64_t T) {
  if (T < 1) {
    throw InvalidDimsError("horizon must be >= 1, got " + std::to_string(T));
  }
}

double sigma_sq_of(const ProblemInstance& inst) {
  return inst.noise_sigma * inst.noise_sigma + inst.tail_at_model_size;
}

}  // namespace

RatePrediction rate_exponent(double alpha, double beta, RateModel model) {
  check_exponents(alpha, beta);
  RatePrediction p;
  p.model = model;
  p.regime = beta >= alpha ? Regime::beta_dominant : Regime::alpha_dominant;
  switch (model) {
    case RateModel::quadratic:
      p.exponent = beta >= alpha ? 1.0 - 1.0 / beta
                                 : (2.0 * beta - 2.0) / (alpha + beta);
      break;
    case RateModel::linear:
      p.exponent = (beta - 1.0) / alpha;
      break;
    case RateModel::info_lower:
      p.exponent = 1.0 - 1.0 / beta;
      break;
  }
  return p;
}

BoundTerms upper_bound_terms(const ProblemInstance& inst, std::int64_t T) {
  check_horizon(T);
  BoundTerms b;
  b.effective_dim = effective_dimension(inst, T);
  b.sigma_sq = sigma_sq_of(inst);
  const double m = static_cast<double>(inst.model_size);
  const double d = static_cast<double>(b.effective_dim);
  const double t = static_cast<double>(T);
  b.approximation = std::pow(m, 1.0 - inst.beta);
  b.variance = b.sigma_sq * d / t;
  b.bias = d / t;
  if (b.effective_dim < inst.model_size) {
    b.bias += std::pow(d, 1.0 - inst.beta);
  }
  return b;
}

double model_limited_bound(const ProblemInstance& inst, std::int64_t T) {
  check_horizon(T);
  const double m = static_cast<double>(inst.model_size);
  return std::pow(m, 1.0 - inst.beta) +
         (sigma_sq_of(inst) + 1.0) * m / static_cast<double>(T);
}

BoundTerms lower_bound_terms(const ProblemInstance& inst, std::int64_t T) {
  check_horizon(T);
  BoundTerms b;
  b.effective_dim = effective_dimension(inst, T);
  b.sigma_sq = sigma_sq_of(inst);
  const double m = static_cast<double>(inst.model_size);
  const double d = static_cast<double>(b.effective_dim);
  b.approximation = std::pow(m, 1.0 - inst.beta);
  b.variance = b.sigma_sq * d / static_cast<double>(T);
  b.bias = b.effective_dim < inst.model_size ? std::pow(d, 1.0 - inst.beta)
                                             : 0.0;
  return b;
}

Allocation optimal_allocation(double budget, double alpha, double beta) {
  check_exponents(alpha, beta);
  if (!std::isfinite(budget) || !(budget >= 4.0)) {
    throw InvalidScaleError("budget must be finite and >= 4, got " +
                            std::to_string(budget));
  }
  // The bottleneck exponent matches the one in effective_dimension: beta
  // when beta > alpha, (alpha+beta)/2 otherwise.
  const double s = std::fmax(beta, 0.5 * (alpha + beta));
  Allocation a;
  a.model_size =
      std::max<std::int64_t>(1, floor_snapped(std::pow(budget, 1.0 / (s + 1.0))));
  a.steps = std::max<std::int64_t>(
      1, floor_snapped(std::pow(budget, s / (s + 1.0))));
  return a;
}

}  // namespace quadsgd
