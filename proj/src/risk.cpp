#include "quadsgd/risk.hpp"

#include <cmath>
#include <string>

#include "quadsgd/numerics.hpp"
#include "quadsgd/sampler.hpp"

namespace quadsgd {

namespace {

void check_params(const ProblemInstance& inst, std::span<const double> params) {
  if (static_cast<std::int64_t>(params.size()) != inst.model_size) {
    throw DimMismatchError("parameter length " +
                           std::to_string(params.size()) +
                           " does not match model_size " +
                           std::to_string(inst.model_size));
  }
  for (double p : params) {
    if (!std::isfinite(p)) {
      throw NonFiniteError("parameter vector contains a non-finite entry");
    }
  }
}

// Shared head computation: sum_i lambda_i * (q_i - vstar_i^2)^2 where q_i is
// v_i^2 for the quadratic model and w_i for the linear one.
template <bool Square>
RiskReport head_risk(const ProblemInstance& inst,
                     std::span<const double> params) {
  check_params(inst, params);
  KahanSum head;
  for (std::int64_t i = 1; i <= inst.model_size; ++i) {
    const double v = vstar_at(inst, i);
    const double p = params[static_cast<std::size_t>(i - 1)];
    const double q = Square ? p * p : p;
    const double diff = q - v * v;
    head.add(lambda_at(inst, i) * diff * diff);
  }
  RiskReport report;
  report.head_term = head.value();
  report.tail_term = inst.tail_at_model_size;
  report.excess = report.head_term + report.tail_term;
  if (!std::isfinite(report.excess)) {
    throw NonFiniteError("excess risk overflowed to a non-finite value");
  }
  return report;
}

}  // namespace

RiskReport excess_risk_quadratic(const ProblemInstance& inst,
                                 std::span<const double> v) {
  return head_risk<true>(inst, v);
}

RiskReport excess_risk_linear(const ProblemInstance& inst,
                              std::span<const double> w) {
  return head_risk<false>(inst, w);
}

RiskReport excess_risk(const ProblemInstance& inst, ModelKind kind,
                       std::span<const double> params) {
  return kind == ModelKind::quadratic ? excess_risk_quadratic(inst, params)
                                      : excess_risk_linear(inst, params);
}

McEstimate mc_excess_risk(const ProblemInstance& inst, ModelKind kind,
                          std::span<const double> params, std::int64_t n,
                          std::uint64_t seed) {
  check_params(inst, params);
  if (n < 2) {
    throw TooFewSamplesError("Monte Carlo estimate needs n >= 2, got " +
                             std::to_string(n));
  }
  SampleStream stream(inst, seed);
  Sample s;
  const std::size_t m = static_cast<std::size_t>(inst.model_size);
  // Welford accumulation of the squared prediction errors.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t j = 0; j < n; ++j) {
    stream.next_sample_into(s);
    double pred = 0.0;
    if (kind == ModelKind::quadratic) {
      for (std::size_t i = 0; i < m; ++i) {
        pred += params[i] * params[i] * s.x_obs[i];
      }
    } else {
      for (std::size_t i = 0; i < m; ++i) pred += params[i] * s.x_obs[i];
    }
    const double err = pred - s.y;
    const double e = err * err;
    const double delta = e - mean;
    mean += delta / static_cast<double>(j + 1);
    m2 += delta * (e - mean);
  }
  McEstimate out;
  out.n = n;
  out.estimate = mean - inst.noise_sigma * inst.noise_sigma;
  const double var = m2 / static_cast<double>(n - 1);
  out.std_error = std::sqrt(var / static_cast<double>(n));
  return out;
}

}  // namespace quadsgd
