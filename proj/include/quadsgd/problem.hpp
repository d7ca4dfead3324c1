#pragma once

#include <cstdint>

#include "quadsgd/errors.hpp"

namespace quadsgd {

// Default tuning constants for the auto-scaled step size and init scale.
// Both are safe over a documented range (see README): c_eta in (0, 0.7),
// c0 in (0, 1.5].
inline constexpr double kDefaultCEta = 0.25;
inline constexpr double kDefaultInitC0 = 0.1;

// How coordinates beyond the trainable block contribute to the data:
// either an explicit finite ambient dimension d (coordinates M+1..d are
// sampled), or the analytic infinite-dimensional limit (their aggregate
// effect enters through closed-form tail sums).
struct Ambient {
  enum class Kind { finite_dim, analytic_infinite };

  Kind kind = Kind::analytic_infinite;
  std::int64_t d = 0;  // ambient dimension; meaningful only for finite_dim

  static Ambient finite(std::int64_t dim) { return {Kind::finite_dim, dim}; }
  static Ambient analytic() { return {Kind::analytic_infinite, 0}; }
  bool is_finite() const { return kind == Kind::finite_dim; }
};

// Power-law regression problem family. Inputs have independent Gaussian
// coordinates with covariance spectrum
//   lambda_i = lambda_scale * i^(-alpha),
// and the ground-truth signal is
//   vstar_i  = vstar_scale * i^(-(beta - alpha)/4),
// so the risk-relevant product decays as lambda_i * vstar_i^4 =
// lambda_scale * vstar_scale^4 * i^(-beta). Responses are
// y = sum_i lambda_i^(1/2) g_i * vstar_i^2 + noise, with N(0, noise_sigma^2)
// label noise. Instances are value types; treat them as immutable.
struct ProblemInstance {
  double alpha = 0.0;        // spectral decay exponent, > 1
  double beta = 0.0;         // source decay exponent, > 1
  std::int64_t model_size = 0;  // trainable block size M >= 1
  Ambient ambient;
  double noise_sigma = 0.0;  // label noise standard deviation, >= 0
  double lambda_scale = 1.0;
  double vstar_scale = 1.0;
  double tail_at_model_size = 0.0;  // cached tail_moment(*this, model_size)
};

// Validates parameters and precomputes the tail moment past the trainable
// block. Throws InvalidSpectrumError, InvalidDimsError, or InvalidScaleError.
ProblemInstance make_instance(double alpha, double beta,
                              std::int64_t model_size, Ambient ambient,
                              double noise_sigma, double lambda_scale = 1.0,
                              double vstar_scale = 1.0);

// Eigenvalue / target coordinate accessors, 1-based. In finite-dim mode the
// index must not exceed the ambient dimension.
double lambda_at(const ProblemInstance& inst, std::int64_t i);
double vstar_at(const ProblemInstance& inst, std::int64_t i);

// sum_{i > from} lambda_i * vstar_i^4. Exact finite sum in finite-dim mode.
// In analytic mode: partial sum plus an integral-test bracket for the
// remainder, tightened until the bracket half-width is below 1e-10 relative.
double tail_moment(const ProblemInstance& inst, std::int64_t from);

// Effective dimension D(T) = floor(T^(1/max{beta, (alpha+beta)/2})) clamped
// to [1, model_size]. The number of coordinates the horizon T can resolve.
std::int64_t effective_dimension(const ProblemInstance& inst, std::int64_t T);

// Same computation from bare exponents, for callers that have no instance
// at hand (e.g. when labeling fits read back from disk).
std::int64_t effective_dimension_for(double alpha, double beta,
                                     std::int64_t model_size, std::int64_t T);

// Auto-scaled step size c_eta * D^(min{0, (alpha-beta)/4}): flat in the
// easy regime beta >= alpha, shrinking with D when alpha > beta.
double recommended_eta(const ProblemInstance& inst, std::int64_t T,
                       double c_eta = kDefaultCEta);

// Auto-scaled init magnitude c0 * min{1, model_size^(-(beta-alpha)/4)}:
// O(1) when alpha > beta, shrinking with the block size otherwise.
double default_init_scale(const ProblemInstance& inst,
                          double c0 = kDefaultInitC0);

}  // namespace quadsgd
