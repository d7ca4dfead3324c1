#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "quadsgd/model_kind.hpp"
#include "quadsgd/problem.hpp"
#include "quadsgd/sampler.hpp"

namespace quadsgd {

enum class LogBase { natural, base2 };

// Tail-geometric step-size schedule over a horizon of total_steps updates:
// constant eta0 for a long warm phase, then halving on a fixed cadence
// packed into the final stretch. With h = ceil(T / log T) and
// T1 = floor((T - h) / log(T - h)) (log natural or base 2),
//   eta_t = eta0                          for t <= T1 + h,
//   eta_t = eta0 / 2^l, l = floor((t - h) / T1), afterwards.
struct StepSchedule {
  double eta0 = 0.0;
  std::int64_t h = 0;
  std::int64_t t1 = 0;
  std::int64_t total_steps = 0;
  LogBase log_base = LogBase::natural;
};

// Builds the schedule for horizon T >= 4. Throws TooFewStepsError when the
// horizon is too short for both phases to be non-degenerate.
StepSchedule make_schedule(std::int64_t T, double eta0,
                           LogBase base = LogBase::natural);

// Degenerate schedule that runs no steps; lets zero-length runs flow through
// the same code paths (initial parameters are the final ones).
StepSchedule zero_step_schedule(double eta0);

// Step size used for update t, valid for t in [0, total_steps].
double eta_at(const StepSchedule& sched, std::int64_t t);

// Initial parameter scale: either auto_scaled (value = multiplier c0 fed to
// default_init_scale; linear models always start at zero) or fixed (value
// used verbatim for every coordinate of either model kind).
struct InitSpec {
  enum class Policy { auto_scaled, fixed };

  Policy policy = Policy::auto_scaled;
  double value = kDefaultInitC0;

  static InitSpec auto_scaled(double c0 = kDefaultInitC0) {
    return {Policy::auto_scaled, c0};
  }
  static InitSpec fixed(double scale) { return {Policy::fixed, scale}; }
};

// Snapshot of the parameters after update t (t = 0 is the initialization).
struct Checkpoint {
  std::int64_t t = 0;
  std::vector<double> params;
  double excess_risk = 0.0;
};

struct TrainResult {
  std::vector<double> final_params;
  std::vector<Checkpoint> checkpoints;
  bool diverged = false;
  std::int64_t divergence_step = -1;  // step that tripped the cap, -1 if none
  std::int64_t steps_run = 0;
};

// One SGD update of the quadratic model on a single sample:
//   r = <v^2, x> - y,  v' = v - eta * r * (v .* x).
// Returns the updated vector; throws NonFiniteError if any coordinate of
// the result is not finite.
std::vector<double> sgd_step_quadratic(std::span<const double> v,
                                       const Sample& sample, double eta);

// One SGD update of the linear model: w' = w - eta * (<w, x> - y) * x.
std::vector<double> sgd_step_linear(std::span<const double> w,
                                    const Sample& sample, double eta);

// Parameter magnitude beyond which a run is declared diverged:
// 10 * max(1, max_i vstar_i) for the quadratic model and
// 10 * max(1, max_i vstar_i^2) for the linear one (whose weights chase the
// squared target). Checks are written as !(|v| <= cap) so NaN trips them.
double divergence_cap(const ProblemInstance& inst, ModelKind kind);

// Runs SGD for schedule.total_steps updates, drawing samples from the
// stream in order. Records checkpoints at the requested step indices
// (deduplicated; each must lie in [0, total_steps]). Divergence aborts the
// run at the offending step; no checkpoint is recorded at or after it.
TrainResult train(const ProblemInstance& inst, const StepSchedule& sched,
                  SampleStream& stream, ModelKind kind, InitSpec init,
                  const std::vector<std::int64_t>& checkpoint_ts = {});

}  // namespace quadsgd
