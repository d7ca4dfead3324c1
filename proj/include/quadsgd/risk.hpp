#pragma once

#include <cstdint>
#include <span>

#include "quadsgd/model_kind.hpp"
#include "quadsgd/problem.hpp"

namespace quadsgd {

// Excess risk split into the trainable-block contribution and the
// irreducible tail past the block. excess = head_term + tail_term.
struct RiskReport {
  double excess = 0.0;
  double head_term = 0.0;
  double tail_term = 0.0;
};

// Closed-form excess risk of the quadratic model with parameters v:
//   sum_{i<=M} lambda_i * (v_i^2 - vstar_i^2)^2 + tail_moment(M).
// Valid because input coordinates are independent and centered, so
// cross-coordinate error terms vanish in expectation.
RiskReport excess_risk_quadratic(const ProblemInstance& inst,
                                 std::span<const double> v);

// Closed-form excess risk of the linear model with weights w, which chases
// the squared target coordinates:
//   sum_{i<=M} lambda_i * (w_i - vstar_i^2)^2 + tail_moment(M).
RiskReport excess_risk_linear(const ProblemInstance& inst,
                              std::span<const double> w);

RiskReport excess_risk(const ProblemInstance& inst, ModelKind kind,
                       std::span<const double> params);

// Monte Carlo estimate of the same quantity from n fresh samples:
// mean of (prediction - y)^2 minus the label-noise variance.
struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;  // sample std of the squared errors / sqrt(n)
  std::int64_t n = 0;
};

McEstimate mc_excess_risk(const ProblemInstance& inst, ModelKind kind,
                          std::span<const double> params, std::int64_t n,
                          std::uint64_t seed);

}  // namespace quadsgd
