#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "quadsgd/model_kind.hpp"
#include "quadsgd/problem.hpp"
#include "quadsgd/sgd.hpp"
#include "quadsgd/theory.hpp"

namespace quadsgd {

// Step-size policy for experiment runs: auto_scaled (value = c_eta fed to
// recommended_eta) or fixed (value used verbatim as eta0).
struct EtaPolicy {
  enum class Kind { auto_scaled, fixed };

  Kind kind = Kind::auto_scaled;
  double value = kDefaultCEta;

  static EtaPolicy auto_scaled(double c_eta = kDefaultCEta) {
    return {Kind::auto_scaled, c_eta};
  }
  static EtaPolicy fixed(double eta) { return {Kind::fixed, eta}; }
};

// Init policy mirroring EtaPolicy: auto_scaled carries c0, fixed carries a
// literal per-coordinate init value.
struct InitPolicy {
  enum class Kind { auto_scaled, fixed };

  Kind kind = Kind::auto_scaled;
  double value = kDefaultInitC0;

  static InitPolicy auto_scaled(double c0 = kDefaultInitC0) {
    return {Kind::auto_scaled, c0};
  }
  static InitPolicy fixed(double scale) { return {Kind::fixed, scale}; }

  InitSpec to_init_spec() const {
    return kind == Kind::auto_scaled ? InitSpec::auto_scaled(value)
                                     : InitSpec::fixed(value);
  }
};

// Full description of a sweep: one problem family evaluated over a grid of
// (T, M) pairs, for each requested model kind, with `repetitions` seeded
// replicates per cell. Grid cells are numbered T-major:
//   grid_id = t_index * m_grid.size() + m_index.
// The `checkpoints` list is used by trajectory diagnostics only; plain
// sweeps record final excess risk and ignore it.
struct ExperimentConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double noise_sigma = 0.0;
  double lambda_scale = 1.0;
  double vstar_scale = 1.0;
  Ambient ambient;
  std::vector<std::int64_t> t_grid;
  std::vector<std::int64_t> m_grid;
  std::int64_t repetitions = 0;
  std::uint64_t base_seed = 0;
  std::vector<ModelKind> model_kinds;
  EtaPolicy eta_policy;
  InitPolicy init_policy;
  LogBase log_base = LogBase::natural;
  std::vector<std::int64_t> checkpoints;
  std::string output;
};

// One completed run. wall_ms is the only field allowed to differ between
// identically seeded executions; every comparison helper ignores it.
struct SweepRecord {
  std::int64_t grid_id = 0;
  std::int64_t T = 0;
  std::int64_t M = 0;
  double alpha = 0.0;
  double beta = 0.0;
  ModelKind model_kind = ModelKind::quadratic;
  std::int64_t rep = 0;
  std::uint64_t seed = 0;
  double excess_risk = 0.0;  // NaN when the run diverged
  bool diverged = false;
  double wall_ms = 0.0;
};

// Per-cell summary over the non-diverged repetitions. Moment fields are NaN
// when no repetition survived (and stddev/std_error when only one did).
struct AggregateRow {
  std::int64_t grid_id = 0;
  std::int64_t T = 0;
  std::int64_t M = 0;
  ModelKind model_kind = ModelKind::quadratic;
  std::int64_t n_ok = 0;
  std::int64_t n_diverged = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  double median = 0.0;
};

// Least-squares line through (log x, log y).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::int64_t n_points = 0;
};

// A fitted learning curve next to its predicted exponent. gap is
// |slope| - theory.exponent (negative = slower than predicted). The regime
// is relabeled model_limited when the largest fitted horizon already
// resolves the whole block.
struct FitRow {
  ModelKind model_kind = ModelKind::quadratic;
  std::int64_t M = 0;
  SlopeFit fit;
  RatePrediction theory;
  Regime regime = Regime::beta_dominant;
  double gap = 0.0;
};

// Deterministic per-run seed: a fixed mixing of (base_seed, grid_id, model
// kind, rep). Distinct tuples get distinct seeds in practice.
std::uint64_t derive_seed(std::uint64_t base_seed, std::int64_t grid_id,
                          ModelKind kind, std::int64_t rep);

// Schedule a run of horizon T would use under this config's eta policy
// (zero-step schedule for T = 0).
StepSchedule schedule_for_config(const ExperimentConfig& config,
                                 const ProblemInstance& inst, std::int64_t T);

// Runs every (grid cell, model kind, repetition) combination. Results come
// back in enumeration order (grid_id, then model kind, then rep) regardless
// of thread count, and are bit-identical for a fixed config. T = 0 cells
// record the excess risk of the untrained initialization.
std::vector<SweepRecord> run_sweep(const ExperimentConfig& config,
                                   int threads = 1);

// Groups records by (grid_id, model_kind) and summarizes the non-diverged
// excess risks. Rows ordered by grid_id, quadratic before linear.
std::vector<AggregateRow> aggregate(const std::vector<SweepRecord>& records);

// Log-log least squares through (x, y) points; every coordinate must be
// strictly positive and at least two distinct x values are required.
SlopeFit fit_loglog(const std::vector<std::pair<double, double>>& points);

// Per (model kind, M) learning-curve fits of mean excess risk against T,
// with the predicted exponent attached. Cells with no surviving repetitions
// or non-positive means are skipped; groups left with fewer than two
// distinct horizons produce no row.
std::vector<FitRow> fit_aggregates(double alpha, double beta,
                                   const std::vector<AggregateRow>& rows);

// Repeated trajectories for the first grid cell of the config (first T,
// first M), one per repetition, with checkpoints recorded for phase
// diagnostics. An empty checkpoint list selects the default set
// {T1, midway points, T}. Seeds match what run_sweep would use for grid
// cell 0, so diagnostics and sweeps agree on the data each rep sees.
struct TrajectoryBatch {
  ProblemInstance instance;
  StepSchedule schedule;  // zero-step schedule when T = 0
  std::vector<TrainResult> results;
};

TrajectoryBatch run_trajectories(const ExperimentConfig& config,
                                 ModelKind kind,
                                 const std::vector<std::int64_t>& checkpoints,
                                 int threads = 1);

// {T1, T1 + (T-T1)/2, T1 + 3(T-T1)/4, T} deduplicated ({0} for the
// zero-step schedule): one Phase I checkpoint plus late Phase II coverage.
std::vector<std::int64_t> default_phase_checkpoints(const StepSchedule& sched);

// Two-phase trajectory diagnostics over a batch of repetitions, all of which
// must contain a checkpoint at t = T1 and at least one later one.
//
// Phase I (measured at t = T1, box half-width c1 in (0, 1)):
//   hit fraction  — coordinates i <= D with |v_i| in [(1-c1), (1+c1)] vstar_i,
//   tail fraction — coordinates i > D with |v_i| <= 1.5 vstar_i.
// Phase II (each checkpoint t in (T1, T], all-coordinate conjunction):
//   fraction of (rep, checkpoint) pairs with every i <= D inside
//   [0.5, 1.5] vstar_i and every i > D inside [0, 2] vstar_i.
// Diverged repetitions are excluded from all fractions and counted.
// Fractions over an empty index set are reported as 1.
struct PhaseBoxReport {
  std::int64_t effective_dim = 0;
  std::int64_t t1 = 0;
  double c1 = 0.0;
  std::int64_t n_reps_used = 0;
  std::int64_t n_reps_diverged = 0;
  std::int64_t n_phase2_checks = 0;
  double phase1_hit_fraction = 0.0;
  double phase1_tail_fraction = 0.0;
  double phase2_confinement_fraction = 0.0;
};

PhaseBoxReport phase_box_report(const ProblemInstance& inst,
                                const std::vector<TrainResult>& results,
                                const StepSchedule& sched, double c1);

}  // namespace quadsgd
