#include "quadsgd/sgd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadsgd/numerics.hpp"
#include "quadsgd/risk.hpp"

namespace quadsgd {

namespace {

double log_in_base(double x, LogBase base) {
  return base == LogBase::natural ? std::log(x) : std::log2(x);
}

void check_eta(double eta) {
  if (!std::isfinite(eta) || !(eta > 0.0)) {
    throw InvalidScaleError("step size must be finite and > 0, got " +
                            std::to_string(eta));
  }
}

}  // namespace

StepSchedule make_schedule(std::int64_t T, double eta0, LogBase base) {
  check_eta(eta0);
  if (T < 4) {
    throw TooFewStepsError("schedule needs a horizon of at least 4, got " +
                           std::to_string(T));
  }
  StepSchedule s;
  s.eta0 = eta0;
  s.log_base = base;
  s.total_steps = T;
  s.h = ceil_snapped(static_cast<double>(T) /
                     log_in_base(static_cast<double>(T), base));
  const std::int64_t rem = T - s.h;
  if (rem < 2) {
    throw TooFewStepsError("horizon " + std::to_string(T) +
                           " leaves no room for the decay phase");
  }
  s.t1 = floor_snapped(static_cast<double>(rem) /
                       log_in_base(static_cast<double>(rem), base));
  if (s.t1 < 1) {
    throw TooFewStepsError("horizon " + std::to_string(T) +
                           " yields an empty constant phase");
  }
  return s;
}

StepSchedule zero_step_schedule(double eta0) {
  check_eta(eta0);
  StepSchedule s;
  s.eta0 = eta0;
  return s;
}

double eta_at(const StepSchedule& sched, std::int64_t t) {
  if (t < 0 || t > sched.total_steps) {
    throw IndexOutOfRangeError("step index " + std::to_string(t) +
                               " outside [0, " +
                               std::to_string(sched.total_steps) + "]");
  }
  if (sched.total_steps == 0 || t <= sched.t1 + sched.h) return sched.eta0;
  const std::int64_t l = (t - sched.h) / sched.t1;
  // Exact halving: eta0 * 2^-l without accumulating rounding error.
  return std::ldexp(sched.eta0, static_cast<int>(-std::min<std::int64_t>(l, 4096)));
}

namespace {

template <bool Quadratic>
std::vector<double> step_generic(std::span<const double> params,
                                 const Sample& sample, double eta) {
  // eta = 0 is a legal no-op step; schedules require eta0 > 0 separately.
  if (!std::isfinite(eta) || eta < 0.0) {
    throw InvalidScaleError("step size must be finite and >= 0, got " +
                            std::to_string(eta));
  }
  const std::size_t m = params.size();
  if (m != sample.x_obs.size()) {
    throw DimMismatchError("parameter length " + std::to_string(m) +
                           " does not match sample dimension " +
                           std::to_string(sample.x_obs.size()));
  }
  double r = -sample.y;
  for (std::size_t i = 0; i < m; ++i) {
    const double p = params[i];
    r += (Quadratic ? p * p : p) * sample.x_obs[i];
  }
  std::vector<double> out(params.begin(), params.end());
  const double f = eta * r;
  for (std::size_t i = 0; i < m; ++i) {
    out[i] -= f * (Quadratic ? out[i] * sample.x_obs[i] : sample.x_obs[i]);
  }
  for (double p : out) {
    if (!std::isfinite(p)) {
      throw NonFiniteError("SGD update produced a non-finite coordinate");
    }
  }
  return out;
}

}  // namespace

std::vector<double> sgd_step_quadratic(std::span<const double> v,
                                       const Sample& sample, double eta) {
  return step_generic<true>(v, sample, eta);
}

std::vector<double> sgd_step_linear(std::span<const double> w,
                                    const Sample& sample, double eta) {
  return step_generic<false>(w, sample, eta);
}

double divergence_cap(const ProblemInstance& inst, ModelKind kind) {
  // v* is increasing in i when alpha > beta and decreasing otherwise, so
  // the extreme sits at one of the two ends of the block.
  const double v_first = vstar_at(inst, 1);
  const double v_last = vstar_at(inst, inst.model_size);
  const double v_max = std::fmax(v_first, v_last);
  const double target = kind == ModelKind::quadratic ? v_max : v_max * v_max;
  return 10.0 * std::fmax(1.0, target);
}

TrainResult train(const ProblemInstance& inst, const StepSchedule& sched,
                  SampleStream& stream, ModelKind kind, InitSpec init,
                  const std::vector<std::int64_t>& checkpoint_ts) {
  if (&stream.instance() != &inst) {
    // Streams cache per-instance tables; a mismatched pair would silently
    // sample the wrong problem.
    throw DimMismatchError("sample stream was built for a different instance");
  }
  std::vector<std::int64_t> cps(checkpoint_ts);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  if (!cps.empty() && (cps.front() < 0 || cps.back() > sched.total_steps)) {
    throw IndexOutOfRangeError("checkpoint steps must lie in [0, " +
                               std::to_string(sched.total_steps) + "]");
  }

  double scale = 0.0;
  if (init.policy == InitSpec::Policy::auto_scaled) {
    scale = kind == ModelKind::quadratic
                ? default_init_scale(inst, init.value)
                : 0.0;
  } else {
    if (!std::isfinite(init.value)) {
      throw InvalidScaleError("fixed init scale must be finite");
    }
    scale = init.value;
  }

  const std::size_t m = static_cast<std::size_t>(inst.model_size);
  std::vector<double> v(m, scale);

  TrainResult res;
  res.checkpoints.reserve(cps.size());
  std::size_t next_cp = 0;
  auto record = [&](std::int64_t t) {
    res.checkpoints.push_back({t, v, excess_risk(inst, kind, v).excess});
  };
  if (next_cp < cps.size() && cps[next_cp] == 0) {
    record(0);
    ++next_cp;
  }

  Sample buf;
  const bool quadratic = kind == ModelKind::quadratic;
  const double cap = divergence_cap(inst, kind);
  for (std::int64_t t = 1; t <= sched.total_steps; ++t) {
    stream.next_sample_into(buf);
    const double eta = eta_at(sched, t);
    const double* x = buf.x_obs.data();
    double* p = v.data();
    double r = -buf.y;
    unsigned ok = 1;
    if (quadratic) {
      for (std::size_t i = 0; i < m; ++i) r += p[i] * p[i] * x[i];
      const double f = eta * r;
      for (std::size_t i = 0; i < m; ++i) {
        const double nv = p[i] - f * p[i] * x[i];
        p[i] = nv;
        ok &= static_cast<unsigned>(std::fabs(nv) <= cap);
      }
    } else {
      for (std::size_t i = 0; i < m; ++i) r += p[i] * x[i];
      const double f = eta * r;
      for (std::size_t i = 0; i < m; ++i) {
        const double nv = p[i] - f * x[i];
        p[i] = nv;
        ok &= static_cast<unsigned>(std::fabs(nv) <= cap);
      }
    }
    if (!ok) {
      res.diverged = true;
      res.divergence_step = t;
      res.steps_run = t;
      break;
    }
    if (next_cp < cps.size() && cps[next_cp] == t) {
      record(t);
      ++next_cp;
    }
  }
  if (!res.diverged) res.steps_run = sched.total_steps;
  res.final_params = std::move(v);
  return res;
}

}  // namespace quadsgd
