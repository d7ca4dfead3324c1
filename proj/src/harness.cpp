#include "quadsgd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "quadsgd/numerics.hpp"
#include "quadsgd/risk.hpp"
#include "quadsgd/sampler.hpp"

namespace quadsgd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs fn(0..n-1) across `threads` workers pulling from a shared counter.
// The item-to-result mapping is positional, so scheduling order never
// affects output. The first exception wins; remaining workers drain.
void parallel_run(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex err_mu;
  std::exception_ptr first_err;
  const int nt = static_cast<int>(std::min<std::int64_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nt));
  for (int w = 0; w < nt; ++w) {
    pool.emplace_back([&] {
      while (!stop.load(std::memory_order_relaxed)) {
        const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_err) first_err = std::current_exception();
          stop.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_err) std::rethrow_exception(first_err);
}

void check_grids(const ExperimentConfig& cfg) {
  if (cfg.t_grid.empty()) throw EmptyInputError("t_grid must not be empty");
  if (cfg.m_grid.empty()) throw EmptyInputError("m_grid must not be empty");
  if (cfg.model_kinds.empty()) {
    throw EmptyInputError("model_kinds must not be empty");
  }
  if (cfg.repetitions < 1) {
    throw InvalidDimsError("repetitions must be >= 1, got " +
                           std::to_string(cfg.repetitions));
  }
  for (std::int64_t t : cfg.t_grid) {
    if (t < 0) {
      throw InvalidDimsError("t_grid entries must be >= 0, got " +
                             std::to_string(t));
    }
  }
}

ProblemInstance instance_for(const ExperimentConfig& cfg, std::int64_t M) {
  return make_instance(cfg.alpha, cfg.beta, M, cfg.ambient, cfg.noise_sigma,
                       cfg.lambda_scale, cfg.vstar_scale);
}

double eta0_for(const ExperimentConfig& cfg, const ProblemInstance& inst,
                std::int64_t T) {
  return cfg.eta_policy.kind == EtaPolicy::Kind::fixed
             ? cfg.eta_policy.value
             : recommended_eta(inst, T, cfg.eta_policy.value);
}

}  // namespace

StepSchedule schedule_for_config(const ExperimentConfig& cfg,
                                 const ProblemInstance& inst, std::int64_t T) {
  const double eta0 = eta0_for(cfg, inst, T);
  return T == 0 ? zero_step_schedule(eta0)
                : make_schedule(T, eta0, cfg.log_base);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::int64_t grid_id,
                          ModelKind kind, std::int64_t rep) {
  std::uint64_t h = mix_seed(base_seed, 0x071c9a3f05d8e42bULL);
  h = mix_seed(h, static_cast<std::uint64_t>(grid_id));
  h = mix_seed(h, kind == ModelKind::quadratic ? 0x51ULL : 0x11ULL);
  h = mix_seed(h, static_cast<std::uint64_t>(rep));
  return h;
}

std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg, int threads) {
  check_grids(cfg);
  std::vector<ProblemInstance> instances;
  instances.reserve(cfg.m_grid.size());
  for (std::int64_t M : cfg.m_grid) instances.push_back(instance_for(cfg, M));

  const std::int64_t n_m = static_cast<std::int64_t>(cfg.m_grid.size());
  const std::int64_t n_kinds = static_cast<std::int64_t>(cfg.model_kinds.size());
  const std::int64_t reps = cfg.repetitions;
  const std::int64_t cells = static_cast<std::int64_t>(cfg.t_grid.size()) * n_m;
  const std::int64_t total = cells * n_kinds * reps;

  std::vector<SweepRecord> out(static_cast<std::size_t>(total));
  parallel_run(total, threads, [&](std::int64_t idx) {
    const std::int64_t rep = idx % reps;
    const std::int64_t kind_ix = (idx / reps) % n_kinds;
    const std::int64_t grid_id = idx / (reps * n_kinds);
    const std::int64_t m_ix = grid_id % n_m;
    const std::int64_t t_ix = grid_id / n_m;
    const ProblemInstance& inst = instances[static_cast<std::size_t>(m_ix)];
    const std::int64_t T = cfg.t_grid[static_cast<std::size_t>(t_ix)];
    const ModelKind kind = cfg.model_kinds[static_cast<std::size_t>(kind_ix)];

    SweepRecord rec;
    rec.grid_id = grid_id;
    rec.T = T;
    rec.M = inst.model_size;
    rec.alpha = cfg.alpha;
    rec.beta = cfg.beta;
    rec.model_kind = kind;
    rec.rep = rep;
    rec.seed = derive_seed(cfg.base_seed, grid_id, kind, rep);

    const auto t_start = std::chrono::steady_clock::now();
    const StepSchedule sched = schedule_for_config(cfg, inst, T);
    SampleStream stream(inst, rec.seed);
    const TrainResult tr =
        train(inst, sched, stream, kind, cfg.init_policy.to_init_spec());
    rec.diverged = tr.diverged;
    rec.excess_risk =
        tr.diverged ? kNaN : excess_risk(inst, kind, tr.final_params).excess;
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
    out[static_cast<std::size_t>(idx)] = std::move(rec);
  });
  // Canonical order regardless of how model_kinds was listed.
  std::stable_sort(out.begin(), out.end(),
                   [](const SweepRecord& a, const SweepRecord& b) {
                     if (a.grid_id != b.grid_id) return a.grid_id < b.grid_id;
                     if (a.model_kind != b.model_kind) {
                       return a.model_kind == ModelKind::quadratic;
                     }
                     return a.rep < b.rep;
                   });
  return out;
}

std::vector<AggregateRow> aggregate(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw EmptyInputError("no records to aggregate");
  std::map<std::pair<std::int64_t, int>, std::vector<const SweepRecord*>> groups;
  for (const SweepRecord& rec : records) {
    groups[{rec.grid_id, rec.model_kind == ModelKind::quadratic ? 0 : 1}]
        .push_back(&rec);
  }
  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, group] : groups) {
    const SweepRecord& head = *group.front();
    AggregateRow row;
    row.grid_id = key.first;
    row.T = head.T;
    row.M = head.M;
    row.model_kind = head.model_kind;
    std::vector<double> ok;
    ok.reserve(group.size());
    for (const SweepRecord* rec : group) {
      if (rec->T != head.T || rec->M != head.M || rec->alpha != head.alpha ||
          rec->beta != head.beta) {
        throw ConfigError("records disagree within grid cell " +
                          std::to_string(key.first));
      }
      if (rec->diverged) {
        ++row.n_diverged;
      } else {
        ok.push_back(rec->excess_risk);
      }
    }
    // Reduce in sorted order so the summary is identical no matter how the
    // records were ordered on the way in.
    std::sort(ok.begin(), ok.end());
    row.n_ok = static_cast<std::int64_t>(ok.size());
    if (ok.empty()) {
      row.mean = row.stddev = row.std_error = row.median = kNaN;
    } else {
      double sum = 0.0;
      for (double v : ok) sum += v;
      row.mean = sum / static_cast<double>(ok.size());
      if (ok.size() >= 2) {
        double ss = 0.0;
        for (double v : ok) ss += (v - row.mean) * (v - row.mean);
        row.stddev = std::sqrt(ss / static_cast<double>(ok.size() - 1));
        row.std_error = row.stddev / std::sqrt(static_cast<double>(ok.size()));
      } else {
        row.stddev = row.std_error = kNaN;
      }
      std::vector<double> sorted(ok);
      std::sort(sorted.begin(), sorted.end());
      const std::size_t mid = sorted.size() / 2;
      row.median = sorted.size() % 2 == 1
                       ? sorted[mid]
                       : 0.5 * (sorted[mid - 1] + sorted[mid]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

SlopeFit fit_loglog(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) {
    throw TooFewPointsError("log-log fit needs at least 2 points, got " +
                            std::to_string(points.size()));
  }
  std::vector<double> lx, ly;
  lx.reserve(points.size());
  ly.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw NonFiniteError("log-log fit fed a non-finite point");
    }
    if (!(x > 0.0) || !(y > 0.0)) {
      throw NonPositiveValueError("log-log fit needs strictly positive points");
    }
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  const double n = static_cast<double>(points.size());
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    xbar += lx[i];
    ybar += ly[i];
  }
  xbar /= n;
  ybar /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - xbar) * (lx[i] - xbar);
    sxy += (lx[i] - xbar) * (ly[i] - ybar);
  }
  if (sxx == 0.0) {
    throw TooFewPointsError("log-log fit needs two distinct x values");
  }
  SlopeFit fit;
  fit.n_points = static_cast<std::int64_t>(points.size());
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ssres = 0.0, sstot = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double resid = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ssres += resid * resid;
    sstot += (ly[i] - ybar) * (ly[i] - ybar);
  }
  fit.r_squared =
      sstot == 0.0 ? 1.0 : std::clamp(1.0 - ssres / sstot, 0.0, 1.0);
  return fit;
}

std::vector<FitRow> fit_aggregates(double alpha, double beta,
                                   const std::vector<AggregateRow>& rows) {
  std::map<std::pair<int, std::int64_t>, std::vector<const AggregateRow*>> groups;
  for (const AggregateRow& row : rows) {
    groups[{row.model_kind == ModelKind::quadratic ? 0 : 1, row.M}]
        .push_back(&row);
  }
  std::vector<FitRow> fits;
  for (const auto& [key, group] : groups) {
    std::vector<std::pair<double, double>> points;
    std::int64_t t_max = 0;
    for (const AggregateRow* row : group) {
      if (row->n_ok < 1 || !std::isfinite(row->mean) || !(row->mean > 0.0) ||
          row->T < 1) {
        continue;
      }
      points.emplace_back(static_cast<double>(row->T), row->mean);
      t_max = std::max(t_max, row->T);
    }
    std::vector<double> xs;
    for (const auto& p : points) xs.push_back(p.first);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() < 2) continue;

    FitRow fr;
    fr.model_kind = key.first == 0 ? ModelKind::quadratic : ModelKind::linear;
    fr.M = key.second;
    fr.fit = fit_loglog(points);
    fr.theory = rate_exponent(alpha, beta,
                              fr.model_kind == ModelKind::quadratic
                                  ? RateModel::quadratic
                                  : RateModel::linear);
    const std::int64_t d_at_max =
        effective_dimension_for(alpha, beta, fr.M, t_max);
    fr.regime = d_at_max == fr.M ? Regime::model_limited : fr.theory.regime;
    fr.gap = std::fabs(fr.fit.slope) - fr.theory.exponent;
    fits.push_back(std::move(fr));
  }
  return fits;
}

std::vector<std::int64_t> default_phase_checkpoints(const StepSchedule& sched) {
  if (sched.total_steps == 0) return {0};
  const std::int64_t T = sched.total_steps;
  const std::int64_t t1 = sched.t1;
  std::vector<std::int64_t> cps = {t1, t1 + (T - t1) / 2,
                                   t1 + 3 * (T - t1) / 4, T};
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

TrajectoryBatch run_trajectories(const ExperimentConfig& cfg, ModelKind kind,
                                 const std::vector<std::int64_t>& checkpoints,
                                 int threads) {
  check_grids(cfg);
  const std::int64_t T = cfg.t_grid.front();
  TrajectoryBatch batch;
  batch.instance = instance_for(cfg, cfg.m_grid.front());
  batch.schedule = schedule_for_config(cfg, batch.instance, T);
  const std::vector<std::int64_t> cps =
      checkpoints.empty() ? default_phase_checkpoints(batch.schedule)
                          : checkpoints;
  batch.results.resize(static_cast<std::size_t>(cfg.repetitions));
  const ProblemInstance& inst = batch.instance;
  parallel_run(cfg.repetitions, threads, [&](std::int64_t rep) {
    SampleStream stream(inst,
                        derive_seed(cfg.base_seed, 0, kind, rep));
    batch.results[static_cast<std::size_t>(rep)] = train(
        inst, batch.schedule, stream, kind, cfg.init_policy.to_init_spec(), cps);
  });
  return batch;
}

PhaseBoxReport phase_box_report(const ProblemInstance& inst,
                                const std::vector<TrainResult>& results,
                                const StepSchedule& sched, double c1) {
  if (!(c1 > 0.0) || !(c1 < 1.0)) {
    throw InvalidScaleError("c1 must lie in (0, 1), got " +
                            std::to_string(c1));
  }
  if (results.empty()) throw EmptyInputError("no trajectories to diagnose");

  PhaseBoxReport rep;
  rep.c1 = c1;
  rep.t1 = sched.t1;
  rep.effective_dim = effective_dimension(inst, sched.total_steps);
  const std::int64_t D = rep.effective_dim;
  const std::size_t m = static_cast<std::size_t>(inst.model_size);
  std::vector<double> vstar(m);
  for (std::size_t i = 0; i < m; ++i) {
    vstar[i] = vstar_at(inst, static_cast<std::int64_t>(i) + 1);
  }

  std::int64_t head_hits = 0, head_total = 0;
  std::int64_t tail_hits = 0, tail_total = 0;
  std::int64_t conf_hits = 0;
  for (const TrainResult& tr : results) {
    if (tr.diverged) {
      ++rep.n_reps_diverged;
      continue;
    }
    const Checkpoint* at_t1 = nullptr;
    std::vector<const Checkpoint*> phase2;
    for (const Checkpoint& cp : tr.checkpoints) {
      if (cp.t == rep.t1) at_t1 = &cp;
      if (cp.t > rep.t1 && cp.t <= sched.total_steps) phase2.push_back(&cp);
    }
    if (at_t1 == nullptr) {
      throw MissingCheckpointError(
          "trajectory lacks the checkpoint at the constant-phase end t = " +
          std::to_string(rep.t1));
    }
    if (phase2.empty() && sched.total_steps > rep.t1) {
      throw MissingCheckpointError(
          "trajectory lacks a decay-phase checkpoint in (" +
          std::to_string(rep.t1) + ", " + std::to_string(sched.total_steps) +
          "]");
    }
    ++rep.n_reps_used;

    for (std::size_t i = 0; i < m; ++i) {
      const double a = std::fabs(at_t1->params[i]);
      if (static_cast<std::int64_t>(i) < D) {
        ++head_total;
        if (a >= (1.0 - c1) * vstar[i] && a <= (1.0 + c1) * vstar[i]) {
          ++head_hits;
        }
      } else {
        ++tail_total;
        if (a <= 1.5 * vstar[i]) ++tail_hits;
      }
    }
    for (const Checkpoint* cp : phase2) {
      bool confined = true;
      for (std::size_t i = 0; i < m && confined; ++i) {
        const double a = std::fabs(cp->params[i]);
        if (static_cast<std::int64_t>(i) < D) {
          confined = a >= 0.5 * vstar[i] && a <= 1.5 * vstar[i];
        } else {
          confined = a <= 2.0 * vstar[i];
        }
      }
      if (confined) ++conf_hits;
      ++rep.n_phase2_checks;
    }
  }
  rep.phase1_hit_fraction =
      head_total == 0 ? 1.0
                      : static_cast<double>(head_hits) /
                            static_cast<double>(head_total);
  rep.phase1_tail_fraction =
      tail_total == 0 ? 1.0
                      : static_cast<double>(tail_hits) /
                            static_cast<double>(tail_total);
  rep.phase2_confinement_fraction =
      rep.n_phase2_checks == 0
          ? 1.0
          : static_cast<double>(conf_hits) /
                static_cast<double>(rep.n_phase2_checks);
  return rep;
}

}  // namespace quadsgd
