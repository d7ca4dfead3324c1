#include "quadsgd/sampler.hpp"

#include <cmath>
#include <string>

namespace quadsgd {

namespace {
// Sampling materializes per-coordinate tables of this length; refuse sizes
// that could not be simulated anyway.
constexpr std::int64_t kMaxMaterialized = std::int64_t{1} << 30;
}  // namespace

SampleStream::SampleStream(const ProblemInstance& inst, std::uint64_t seed)
    : inst_(&inst), seed_(seed), rng_(seed) {
  const std::int64_t len =
      inst.ambient.is_finite() ? inst.ambient.d : inst.model_size;
  if (len > kMaxMaterialized) {
    throw InvalidDimsError("cannot materialize " + std::to_string(len) +
                           " coordinates for sampling");
  }
  sqrt_lambda_.resize(static_cast<std::size_t>(len));
  vstar_sq_.resize(static_cast<std::size_t>(len));
  for (std::int64_t i = 1; i <= len; ++i) {
    const double v = vstar_at(inst, i);
    sqrt_lambda_[static_cast<std::size_t>(i - 1)] = std::sqrt(lambda_at(inst, i));
    vstar_sq_[static_cast<std::size_t>(i - 1)] = v * v;
  }
  if (!inst.ambient.is_finite()) {
    tail_sigma_ = std::sqrt(inst.tail_at_model_size);
  }
}

Sample SampleStream::next_sample() {
  Sample s;
  next_sample_into(s);
  return s;
}

void SampleStream::next_sample_into(Sample& out) {
  const std::size_t m = static_cast<std::size_t>(inst_->model_size);
  out.x_obs.resize(m);
  double y = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = sqrt_lambda_[i] * rng_.next();
    out.x_obs[i] = x;
    y += x * vstar_sq_[i];
  }
  if (inst_->ambient.is_finite()) {
    const std::size_t d = sqrt_lambda_.size();
    for (std::size_t i = m; i < d; ++i) {
      y += sqrt_lambda_[i] * rng_.next() * vstar_sq_[i];
    }
  } else {
    y += tail_sigma_ * rng_.next();
  }
  y += inst_->noise_sigma * rng_.next();
  out.y = y;
  ++counter_;
}

}  // namespace quadsgd
