#pragma once

#include <cstdint>

#include "quadsgd/problem.hpp"

namespace quadsgd {

// Which regime of the (alpha, beta) plane drives the predicted rate, plus a
// label for runs whose horizon saturates the trainable block.
enum class Regime { beta_dominant, alpha_dominant, model_limited };

// Which learning curve a rate prediction refers to: the quadratic model,
// the linear baseline, or the information-theoretic lower bound that no
// estimator can beat.
enum class RateModel { quadratic, linear, info_lower };

struct RatePrediction {
  double exponent = 0.0;  // excess risk decays as T^(-exponent)
  Regime regime = Regime::beta_dominant;
  RateModel model = RateModel::quadratic;
};

// Predicted power-law exponents:
//   quadratic: 1 - 1/beta            when beta >= alpha,
//              (2 beta - 2)/(alpha + beta) when alpha > beta;
//   linear:    (beta - 1)/alpha;
//   info_lower: 1 - 1/beta.
RatePrediction rate_exponent(double alpha, double beta, RateModel model);

// Risk upper-bound decomposition at horizon T with D = effective_dimension:
//   approximation = M^(1-beta)        (block truncation floor),
//   variance      = sigma^2 * D / T   (noise accumulated by D coordinates),
//   bias          = D/T + D^(1-beta) * [D < M]  (unconverged coordinates),
// where sigma^2 = noise_sigma^2 + tail_moment(M).
struct BoundTerms {
  double approximation = 0.0;
  double variance = 0.0;
  double bias = 0.0;
  std::int64_t effective_dim = 0;
  double sigma_sq = 0.0;

  double total() const { return approximation + variance + bias; }
};

BoundTerms upper_bound_terms(const ProblemInstance& inst, std::int64_t T);

// Simplified bound for runs whose horizon resolves the whole block
// (model-limited regime): M^(1-beta) + (sigma^2 + 1) * M / T.
double model_limited_bound(const ProblemInstance& inst, std::int64_t T);

// Matching lower-bound decomposition: M^(1-beta) + sigma^2 * D / T +
// D^(1-beta) * [D < M]. Same struct; bias here omits the D/T term.
BoundTerms lower_bound_terms(const ProblemInstance& inst, std::int64_t T);

// Best split of a budget of B = M * T scalar observations between block
// size and horizon. With s = max{beta, (alpha+beta)/2}:
//   M = floor(B^(1/(s+1))), T = floor(B^(s/(s+1))), both >= 1.
struct Allocation {
  std::int64_t model_size = 0;
  std::int64_t steps = 0;
};

Allocation optimal_allocation(double budget, double alpha, double beta);

}  // namespace quadsgd
