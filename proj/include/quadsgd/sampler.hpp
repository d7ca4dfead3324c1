#pragma once

#include <cstdint>
#include <vector>

#include "quadsgd/problem.hpp"
#include "quadsgd/rng.hpp"

namespace quadsgd {

// One observation: the trainable block of the input (coordinates 1..M,
// scaled by lambda_i^(1/2)) and the full response y. Coordinates past the
// block influence y but are never exposed to the learner.
struct Sample {
  std::vector<double> x_obs;
  double y = 0.0;
};

// Deterministic i.i.d. sample stream for one problem instance. A fixed
// (instance, seed) pair yields the same sample sequence on every platform;
// counter() says how many samples have been drawn. Draw order per sample is
// fixed: block coordinates 1..M, then the unobserved part of y (remaining
// finite coordinates, or one aggregate tail draw in analytic mode), then
// label noise. The stream keeps a non-owning pointer to the instance, which
// must outlive it.
class SampleStream {
 public:
  SampleStream(const ProblemInstance& inst, std::uint64_t seed);

  const ProblemInstance& instance() const { return *inst_; }
  std::uint64_t seed() const { return seed_; }
  std::int64_t counter() const { return counter_; }

  Sample next_sample();
  // Same draw, reusing the caller's buffer (resized to the block size).
  void next_sample_into(Sample& out);

 private:
  const ProblemInstance* inst_;
  std::uint64_t seed_;
  std::int64_t counter_ = 0;
  GaussianRng rng_;
  std::vector<double> sqrt_lambda_;  // lambda_i^(1/2), i = 1..len
  std::vector<double> vstar_sq_;     // vstar_i^2, i = 1..len
  double tail_sigma_ = 0.0;  // analytic mode: sqrt(tail_moment(M)) for y
};

inline SampleStream new_stream(const ProblemInstance& inst,
                               std::uint64_t seed) {
  return SampleStream(inst, seed);
}

}  // namespace quadsgd
