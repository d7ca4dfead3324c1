#include "quadsgd/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadsgd/numerics.hpp"

namespace quadsgd {

namespace {

constexpr double kTailRelTol = 1e-10;

// sum_{i > from} i^(-beta), analytically continued past a finite partial
// sum: the remainder beyond N is bracketed by the integral test,
//   (N+1)^(1-beta)/(beta-1) <= sum_{i>N} i^(-beta) <= N^(1-beta)/(beta-1),
// and N doubles until the bracket half-width drops below kTailRelTol of the
// estimate. Returns the bracket midpoint.
double analytic_power_tail(double beta, std::int64_t from) {
  KahanSum partial;
  std::int64_t n = from;
  std::int64_t target = from + 1024;
  for (;;) {
    for (; n < target; ++n) {
      partial.add(std::pow(static_cast<double>(n + 1), -beta));
    }
    const double nd = static_cast<double>(n);
    const double lo = std::pow(nd + 1.0, 1.0 - beta) / (beta - 1.0);
    const double hi = std::pow(nd, 1.0 - beta) / (beta - 1.0);
    const double est = partial.value() + 0.5 * (lo + hi);
    if (0.5 * (hi - lo) <= kTailRelTol * est) return est;
    target = 2 * n;
  }
}

double tail_moment_impl(double beta, double coeff, const Ambient& ambient,
                        std::int64_t from) {
  if (ambient.is_finite()) {
    KahanSum sum;
    for (std::int64_t i = from + 1; i <= ambient.d; ++i) {
      sum.add(std::pow(static_cast<double>(i), -beta));
    }
    return coeff * sum.value();
  }
  return coeff * analytic_power_tail(beta, from);
}

}  // namespace

ProblemInstance make_instance(double alpha, double beta,
                              std::int64_t model_size, Ambient ambient,
                              double noise_sigma, double lambda_scale,
                              double vstar_scale) {
  if (!std::isfinite(alpha) || !(alpha > 1.0)) {
    throw InvalidSpectrumError("alpha must be finite and > 1, got " +
                               std::to_string(alpha));
  }
  if (!std::isfinite(beta) || !(beta > 1.0)) {
    throw InvalidSpectrumError("beta must be finite and > 1, got " +
                               std::to_string(beta));
  }
  if (model_size < 1) {
    throw InvalidDimsError("model_size must be >= 1, got " +
                           std::to_string(model_size));
  }
  if (ambient.is_finite()) {
    if (ambient.d < 1) {
      throw InvalidDimsError("ambient dimension must be >= 1, got " +
                             std::to_string(ambient.d));
    }
    if (model_size > ambient.d) {
      throw InvalidDimsError("model_size " + std::to_string(model_size) +
                             " exceeds ambient dimension " +
                             std::to_string(ambient.d));
    }
  }
  if (!std::isfinite(noise_sigma) || noise_sigma < 0.0) {
    throw InvalidScaleError("noise_sigma must be finite and >= 0, got " +
                            std::to_string(noise_sigma));
  }
  if (!std::isfinite(lambda_scale) || !(lambda_scale > 0.0)) {
    throw InvalidScaleError("lambda_scale must be finite and > 0, got " +
                            std::to_string(lambda_scale));
  }
  // vstar_scale = 0 is allowed: it degenerates the target to zero, which
  // the sampler contract uses (pure-noise responses).
  if (!std::isfinite(vstar_scale) || vstar_scale < 0.0) {
    throw InvalidScaleError("vstar_scale must be finite and >= 0, got " +
                            std::to_string(vstar_scale));
  }

  ProblemInstance inst;
  inst.alpha = alpha;
  inst.beta = beta;
  inst.model_size = model_size;
  inst.ambient = ambient;
  inst.noise_sigma = noise_sigma;
  inst.lambda_scale = lambda_scale;
  inst.vstar_scale = vstar_scale;
  const double coeff = lambda_scale * std::pow(vstar_scale, 4.0);
  inst.tail_at_model_size = tail_moment_impl(beta, coeff, ambient, model_size);
  return inst;
}

double lambda_at(const ProblemInstance& inst, std::int64_t i) {
  if (i < 1 || (inst.ambient.is_finite() && i > inst.ambient.d)) {
    throw IndexOutOfRangeError("coordinate index " + std::to_string(i) +
                               " out of range");
  }
  return inst.lambda_scale * std::pow(static_cast<double>(i), -inst.alpha);
}

double vstar_at(const ProblemInstance& inst, std::int64_t i) {
  if (i < 1 || (inst.ambient.is_finite() && i > inst.ambient.d)) {
    throw IndexOutOfRangeError("coordinate index " + std::to_string(i) +
                               " out of range");
  }
  return inst.vstar_scale *
         std::pow(static_cast<double>(i), -(inst.beta - inst.alpha) / 4.0);
}

double tail_moment(const ProblemInstance& inst, std::int64_t from) {
  if (from < 0) {
    throw InvalidDimsError("tail_moment start must be >= 0, got " +
                           std::to_string(from));
  }
  if (from == inst.model_size) return inst.tail_at_model_size;
  const double coeff = inst.lambda_scale * std::pow(inst.vstar_scale, 4.0);
  return tail_moment_impl(inst.beta, coeff, inst.ambient, from);
}

std::int64_t effective_dimension(const ProblemInstance& inst, std::int64_t T) {
  return effective_dimension_for(inst.alpha, inst.beta, inst.model_size, T);
}

std::int64_t effective_dimension_for(double alpha, double beta,
                                     std::int64_t model_size, std::int64_t T) {
  if (T < 0) {
    throw InvalidDimsError("horizon must be >= 0, got " + std::to_string(T));
  }
  if (model_size < 1) {
    throw InvalidDimsError("model_size must be >= 1, got " +
                           std::to_string(model_size));
  }
  if (T == 0) return 1;
  const double s = std::fmax(beta, 0.5 * (alpha + beta));
  const std::int64_t d = floor_snapped(std::pow(static_cast<double>(T), 1.0 / s));
  return std::clamp<std::int64_t>(d, 1, model_size);
}

double recommended_eta(const ProblemInstance& inst, std::int64_t T,
                       double c_eta) {
  if (!std::isfinite(c_eta) || !(c_eta > 0.0)) {
    throw InvalidScaleError("c_eta must be finite and > 0, got " +
                            std::to_string(c_eta));
  }
  const double d = static_cast<double>(effective_dimension(inst, T));
  const double expo = std::fmin(0.0, (inst.alpha - inst.beta) / 4.0);
  return c_eta * std::pow(d, expo);
}

double default_init_scale(const ProblemInstance& inst, double c0) {
  if (!std::isfinite(c0) || !(c0 > 0.0)) {
    throw InvalidScaleError("c0 must be finite and > 0, got " +
                            std::to_string(c0));
  }
  const double m = static_cast<double>(inst.model_size);
  return c0 * std::fmin(1.0, std::pow(m, -(inst.beta - inst.alpha) / 4.0));
}

}  // namespace quadsgd
