#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "quadsgd/errors.hpp"
#include "quadsgd/harness.hpp"
#include "quadsgd/risk.hpp"
#include "quadsgd/sampler.hpp"

using namespace quadsgd;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.alpha = 3.0;
  cfg.beta = 2.0;
  cfg.noise_sigma = 0.5;
  cfg.lambda_scale = 1.0;
  cfg.vstar_scale = 1.0;
  cfg.ambient = Ambient::finite(30);
  cfg.t_grid = {50, 100};
  cfg.m_grid = {10, 20};
  cfg.repetitions = 3;
  cfg.base_seed = 99;
  cfg.model_kinds = {ModelKind::quadratic, ModelKind::linear};
  cfg.eta_policy = EtaPolicy::auto_scaled(0.25);
  cfg.init_policy = InitPolicy::auto_scaled(1.0);
  cfg.log_base = LogBase::natural;
  cfg.output = "unused";
  return cfg;
}

bool same_record(const SweepRecord& a, const SweepRecord& b) {
  const bool excess_same =
      (std::isnan(a.excess_risk) && std::isnan(b.excess_risk)) ||
      a.excess_risk == b.excess_risk;
  return a.grid_id == b.grid_id && a.T == b.T && a.M == b.M &&
         a.alpha == b.alpha && a.beta == b.beta &&
         a.model_kind == b.model_kind && a.rep == b.rep && a.seed == b.seed &&
         excess_same && a.diverged == b.diverged;
}

SweepRecord cell_record(std::int64_t grid_id, ModelKind kind, std::int64_t rep,
                        double excess, bool diverged = false) {
  SweepRecord rec;
  rec.grid_id = grid_id;
  rec.T = 100 + grid_id;
  rec.M = 10;
  rec.alpha = 3.0;
  rec.beta = 2.0;
  rec.model_kind = kind;
  rec.rep = rep;
  rec.seed = 1000 + static_cast<std::uint64_t>(rep);
  rec.excess_risk = excess;
  rec.diverged = diverged;
  rec.wall_ms = 1.0;
  return rec;
}

// A hand-built trajectory pinned at factor * vstar at every checkpoint of
// the schedule's default diagnostic set.
TrainResult pinned_result(const ProblemInstance& inst,
                          const StepSchedule& sched, double factor) {
  std::vector<double> params(static_cast<std::size_t>(inst.model_size));
  for (std::size_t i = 0; i < params.size(); ++i) {
    params[i] = factor * vstar_at(inst, static_cast<std::int64_t>(i) + 1);
  }
  TrainResult tr;
  tr.final_params = params;
  tr.steps_run = sched.total_steps;
  for (std::int64_t t : default_phase_checkpoints(sched)) {
    tr.checkpoints.push_back({t, params, 0.0});
  }
  return tr;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("derived seeds are reproducible and collision-free in bulk") {
  CHECK(derive_seed(1, 2, ModelKind::quadratic, 3) ==
        derive_seed(1, 2, ModelKind::quadratic, 3));
  CHECK(derive_seed(1, 2, ModelKind::quadratic, 3) !=
        derive_seed(1, 2, ModelKind::quadratic, 4));
  CHECK(derive_seed(1, 2, ModelKind::quadratic, 3) !=
        derive_seed(1, 2, ModelKind::linear, 3));
  CHECK(derive_seed(1, 2, ModelKind::quadratic, 3) !=
        derive_seed(1, 3, ModelKind::quadratic, 3));
  CHECK(derive_seed(1, 2, ModelKind::quadratic, 3) !=
        derive_seed(2, 2, ModelKind::quadratic, 3));

  // One million tuples around one base seed: all seeds distinct.
  std::vector<std::uint64_t> seeds;
  seeds.reserve(1000000);
  for (std::int64_t grid = 0; grid < 100; ++grid) {
    for (const ModelKind kind : {ModelKind::quadratic, ModelKind::linear}) {
      for (std::int64_t rep = 0; rep < 5000; ++rep) {
        seeds.push_back(derive_seed(0xDEADBEEF, grid, kind, rep));
      }
    }
  }
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
}

TEST_CASE("sweep enumerates the grid T-major with canonical record order") {
  const ExperimentConfig cfg = small_config();
  const std::vector<SweepRecord> records = run_sweep(cfg);
  REQUIRE(records.size() == 24);  // 2 T x 2 M x 2 kinds x 3 reps

  // grid_id = t_index * |m_grid| + m_index.
  CHECK(records[0].T == 50);
  CHECK(records[0].M == 10);
  CHECK(records[6].grid_id == 1);
  CHECK(records[6].T == 50);
  CHECK(records[6].M == 20);
  CHECK(records[12].grid_id == 2);
  CHECK(records[12].T == 100);
  CHECK(records[12].M == 10);
  CHECK(records[18].grid_id == 3);
  CHECK(records[18].T == 100);
  CHECK(records[18].M == 20);

  // Within a cell: quadratic reps first, then linear reps, rep ascending.
  for (int c = 0; c < 4; ++c) {
    const int base = 6 * c;
    for (int r = 0; r < 3; ++r) {
      CHECK(records[base + r].model_kind == ModelKind::quadratic);
      CHECK(records[base + r].rep == r);
      CHECK(records[base + 3 + r].model_kind == ModelKind::linear);
      CHECK(records[base + 3 + r].rep == r);
    }
    for (int k = 0; k < 6; ++k) CHECK(records[base + k].grid_id == c);
  }

  // Listing the kinds in the other order must not change the output.
  ExperimentConfig flipped = small_config();
  flipped.model_kinds = {ModelKind::linear, ModelKind::quadratic};
  const std::vector<SweepRecord> swapped = run_sweep(flipped);
  REQUIRE(swapped.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(same_record(records[i], swapped[i]));
  }
}

TEST_CASE("sweep output is identical across repeat runs and thread counts") {
  const ExperimentConfig cfg = small_config();
  const std::vector<SweepRecord> once = run_sweep(cfg, 1);
  const std::vector<SweepRecord> twice = run_sweep(cfg, 1);
  const std::vector<SweepRecord> pooled = run_sweep(cfg, 3);
  REQUIRE(once.size() == twice.size());
  REQUIRE(once.size() == pooled.size());
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(same_record(once[i], twice[i]));
    CHECK(same_record(once[i], pooled[i]));
  }

  // A different base seed must actually change the data.
  ExperimentConfig reseeded = small_config();
  reseeded.base_seed = 100;
  const std::vector<SweepRecord> other = run_sweep(reseeded);
  CHECK(other[0].seed != once[0].seed);
  CHECK(other[0].excess_risk != once[0].excess_risk);
}

TEST_CASE("any sweep record can be replayed from its seed alone") {
  const ExperimentConfig cfg = small_config();
  const std::vector<SweepRecord> records = run_sweep(cfg);
  for (const std::size_t pick : {std::size_t{0}, std::size_t{7},
                                 std::size_t{23}}) {
    const SweepRecord& rec = records[pick];
    REQUIRE_FALSE(rec.diverged);
    const ProblemInstance inst =
        make_instance(cfg.alpha, cfg.beta, rec.M, cfg.ambient, cfg.noise_sigma,
                      cfg.lambda_scale, cfg.vstar_scale);
    const StepSchedule sched = schedule_for_config(cfg, inst, rec.T);
    SampleStream stream(inst, rec.seed);
    const TrainResult tr = train(inst, sched, stream, rec.model_kind,
                                 cfg.init_policy.to_init_spec());
    CHECK(excess_risk(inst, rec.model_kind, tr.final_params).excess ==
          rec.excess_risk);
  }
}

TEST_CASE("zero-step cells record the risk of the initialization") {
  ExperimentConfig cfg = small_config();
  cfg.t_grid = {0};
  cfg.m_grid = {10};
  cfg.model_kinds = {ModelKind::quadratic};
  cfg.repetitions = 2;
  const std::vector<SweepRecord> records = run_sweep(cfg);
  REQUIRE(records.size() == 2);
  const ProblemInstance inst =
      make_instance(cfg.alpha, cfg.beta, 10, cfg.ambient, cfg.noise_sigma);
  const std::vector<double> init(
      10, default_init_scale(inst, cfg.init_policy.value));
  const double expected = excess_risk_quadratic(inst, init).excess;
  CHECK(records[0].excess_risk == expected);
  CHECK(records[1].excess_risk == expected);  // same init, no steps taken
}

TEST_CASE("sweep validates its grids up front") {
  ExperimentConfig cfg = small_config();
  cfg.t_grid = {};
  CHECK_THROWS_AS(run_sweep(cfg), EmptyInputError);
  cfg = small_config();
  cfg.m_grid = {};
  CHECK_THROWS_AS(run_sweep(cfg), EmptyInputError);
  cfg = small_config();
  cfg.model_kinds = {};
  CHECK_THROWS_AS(run_sweep(cfg), EmptyInputError);
  cfg = small_config();
  cfg.repetitions = 0;
  CHECK_THROWS_AS(run_sweep(cfg), InvalidDimsError);
  cfg = small_config();
  cfg.t_grid = {-5};
  CHECK_THROWS_AS(run_sweep(cfg), InvalidDimsError);
  cfg = small_config();
  cfg.t_grid = {2};  // too short for a two-phase schedule
  CHECK_THROWS_AS(run_sweep(cfg), TooFewStepsError);
  cfg = small_config();
  cfg.m_grid = {40};  // exceeds the finite ambient dimension of 30
  CHECK_THROWS_AS(run_sweep(cfg), InvalidDimsError);
}

TEST_CASE("aggregate reduces each cell to the documented summary") {
  std::vector<SweepRecord> records;
  records.push_back(cell_record(0, ModelKind::quadratic, 0, 1.0));
  records.push_back(cell_record(0, ModelKind::quadratic, 1, 3.0));
  const std::vector<AggregateRow> rows = aggregate(records);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_ok == 2);
  CHECK(rows[0].n_diverged == 0);
  CHECK(rows[0].mean == 2.0);
  CHECK(rows[0].stddev == doctest::Approx(1.4142135623730951).epsilon(1e-14));
  CHECK(rows[0].std_error == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rows[0].median == 2.0);
}

TEST_CASE("aggregate medians, single samples and divergence bookkeeping") {
  std::vector<SweepRecord> records;
  // Even count: median averages the middle pair.
  for (int r = 0; r < 4; ++r) {
    records.push_back(
        cell_record(0, ModelKind::quadratic, r, static_cast<double>(r + 1)));
  }
  // Odd count, unsorted input.
  records.push_back(cell_record(1, ModelKind::quadratic, 0, 5.0));
  records.push_back(cell_record(1, ModelKind::quadratic, 1, 1.0));
  records.push_back(cell_record(1, ModelKind::quadratic, 2, 3.0));
  // One lone repetition: spread is undefined.
  records.push_back(cell_record(2, ModelKind::quadratic, 0, 7.0));
  // Divergences drop out of the moments but are counted.
  records.push_back(cell_record(3, ModelKind::quadratic, 0, 2.0));
  records.push_back(
      cell_record(3, ModelKind::quadratic, 1, std::nan(""), true));
  records.push_back(cell_record(3, ModelKind::quadratic, 2, 4.0));
  // A cell with no survivors at all.
  records.push_back(
      cell_record(4, ModelKind::quadratic, 0, std::nan(""), true));

  const std::vector<AggregateRow> rows = aggregate(records);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].median == 2.5);
  CHECK(rows[1].median == 3.0);
  CHECK(rows[2].n_ok == 1);
  CHECK(rows[2].mean == 7.0);
  CHECK(std::isnan(rows[2].stddev));
  CHECK(std::isnan(rows[2].std_error));
  CHECK(rows[3].n_ok == 2);
  CHECK(rows[3].n_diverged == 1);
  CHECK(rows[3].mean == 3.0);
  CHECK(rows[4].n_ok == 0);
  CHECK(rows[4].n_diverged == 1);
  CHECK(std::isnan(rows[4].mean));
  CHECK(std::isnan(rows[4].median));
}

TEST_CASE("aggregate output does not depend on record order") {
  const ExperimentConfig cfg = small_config();
  std::vector<SweepRecord> records = run_sweep(cfg);
  const std::vector<AggregateRow> before = aggregate(records);

  std::mt19937 rng(5);
  std::shuffle(records.begin(), records.end(), rng);
  const std::vector<AggregateRow> after = aggregate(records);

  REQUIRE(before.size() == after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(before[i].grid_id == after[i].grid_id);
    CHECK(before[i].model_kind == after[i].model_kind);
    CHECK(before[i].n_ok == after[i].n_ok);
    CHECK(before[i].mean == after[i].mean);  // bit-identical reduction
    CHECK(before[i].stddev == after[i].stddev);
    CHECK(before[i].std_error == after[i].std_error);
    CHECK(before[i].median == after[i].median);
  }
}

TEST_CASE("aggregate rejects empty input and inconsistent cells") {
  CHECK_THROWS_AS(aggregate({}), EmptyInputError);
  std::vector<SweepRecord> records;
  records.push_back(cell_record(0, ModelKind::quadratic, 0, 1.0));
  records.push_back(cell_record(0, ModelKind::quadratic, 1, 2.0));
  records[1].M = 99;  // same cell id, different geometry
  CHECK_THROWS_AS(aggregate(records), ConfigError);
}

TEST_CASE("log-log fit recovers exact power laws") {
  std::vector<std::pair<double, double>> points;
  for (const double x : {1e3, 1e4, 1e5, 1e6}) {
    points.emplace_back(x, 7.0 * std::pow(x, -0.4));
  }
  const SlopeFit fit = fit_loglog(points);
  CHECK(std::fabs(fit.slope - (-0.4)) < 1e-9);
  CHECK(std::fabs(fit.intercept - std::log(7.0)) < 1e-9);
  CHECK(fit.r_squared > 1.0 - 1e-12);
  CHECK(fit.n_points == 4);

  // Flat data fits a zero slope with the r^2 = 1 convention.
  const SlopeFit flat = fit_loglog({{1.0, 2.0}, {10.0, 2.0}, {100.0, 2.0}});
  CHECK(flat.slope == 0.0);
  CHECK(flat.r_squared == 1.0);
}

TEST_CASE("rescaling the curve shifts the intercept, not the slope") {
  std::vector<std::pair<double, double>> base, scaled;
  for (const double x : {10.0, 100.0, 1000.0, 30000.0}) {
    const double y = 2.5 * std::pow(x, -0.7) * (1.0 + 0.01 * std::sin(x));
    base.emplace_back(x, y);
    scaled.emplace_back(x, 5.0 * y);
  }
  const SlopeFit a = fit_loglog(base);
  const SlopeFit b = fit_loglog(scaled);
  CHECK(std::fabs(a.slope - b.slope) < 1e-12);
  CHECK(std::fabs((b.intercept - a.intercept) - std::log(5.0)) < 1e-12);
}

TEST_CASE("log-log fit rejects degenerate input") {
  CHECK_THROWS_AS(fit_loglog({{1.0, 1.0}}), TooFewPointsError);
  CHECK_THROWS_AS(fit_loglog({{2.0, 1.0}, {2.0, 3.0}}), TooFewPointsError);
  CHECK_THROWS_AS(fit_loglog({{1.0, 1.0}, {2.0, -1.0}}),
                  NonPositiveValueError);
  CHECK_THROWS_AS(fit_loglog({{0.0, 1.0}, {2.0, 1.0}}),
                  NonPositiveValueError);
  CHECK_THROWS_AS(fit_loglog({{1.0, 1.0}, {2.0, std::nan("")}}),
                  NonFiniteError);
}

TEST_CASE("curve fits attach theory exponents and regimes") {
  // Synthetic aggregates following exact power laws for both model kinds.
  std::vector<AggregateRow> rows;
  for (const std::int64_t T : {1000, 10000, 100000}) {
    AggregateRow q;
    q.grid_id = T;
    q.T = T;
    q.M = 50;
    q.model_kind = ModelKind::quadratic;
    q.n_ok = 5;
    q.mean = 3.0 * std::pow(static_cast<double>(T), -0.4);
    rows.push_back(q);
    AggregateRow l = q;
    l.model_kind = ModelKind::linear;
    l.mean = 2.0 * std::pow(static_cast<double>(T), -1.0 / 3.0);
    rows.push_back(l);
  }
  const std::vector<FitRow> fits = fit_aggregates(3.0, 2.0, rows);
  REQUIRE(fits.size() == 2);
  CHECK(fits[0].model_kind == ModelKind::quadratic);
  CHECK(std::fabs(fits[0].fit.slope + 0.4) < 1e-9);
  CHECK(fits[0].theory.exponent == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(std::fabs(fits[0].gap) < 1e-9);
  // D(100000) = floor(100000^0.4) = 100 > M would saturate; here M = 50 is
  // already resolved at the largest horizon, so the label flips.
  CHECK(fits[0].regime == Regime::model_limited);
  CHECK(fits[1].model_kind == ModelKind::linear);
  CHECK(std::fabs(fits[1].fit.slope + 1.0 / 3.0) < 1e-9);
  CHECK(fits[1].theory.exponent == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("curve fits skip unusable cells and starved groups") {
  std::vector<AggregateRow> rows;
  AggregateRow a;
  a.grid_id = 0;
  a.T = 1000;
  a.M = 1000;
  a.model_kind = ModelKind::quadratic;
  a.n_ok = 3;
  a.mean = 0.5;
  rows.push_back(a);
  AggregateRow b = a;
  b.grid_id = 1;
  b.T = 2000;
  b.n_ok = 0;  // wiped out cell: NaN mean
  b.mean = std::nan("");
  rows.push_back(b);
  // Only one usable horizon remains: no fit row at all.
  CHECK(fit_aggregates(3.0, 2.0, rows).empty());

  AggregateRow c = a;
  c.grid_id = 2;
  c.T = 4000;
  c.mean = 0.25;
  rows.push_back(c);
  const std::vector<FitRow> fits = fit_aggregates(3.0, 2.0, rows);
  REQUIRE(fits.size() == 1);
  CHECK(fits[0].fit.n_points == 2);
  CHECK(fits[0].regime == Regime::alpha_dominant);  // D(4000) = 27 < M
}

TEST_CASE("default diagnostic checkpoints bracket the decay phase") {
  const StepSchedule sched = make_schedule(5000, 0.25);
  CHECK(sched.h == 588);
  CHECK(sched.t1 == 525);
  const std::vector<std::int64_t> cps = default_phase_checkpoints(sched);
  REQUIRE(cps.size() == 4);
  CHECK(cps[0] == 525);
  CHECK(cps[1] == 2762);
  CHECK(cps[2] == 3881);
  CHECK(cps[3] == 5000);

  const std::vector<std::int64_t> zero =
      default_phase_checkpoints(zero_step_schedule(0.1));
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == 0);
}

TEST_CASE("trajectory batches reuse the sweep seeds for grid cell zero") {
  ExperimentConfig cfg = small_config();
  cfg.repetitions = 2;
  const TrajectoryBatch batch =
      run_trajectories(cfg, ModelKind::quadratic, {}, 1);
  CHECK(batch.instance.model_size == 10);
  CHECK(batch.schedule.total_steps == 50);
  REQUIRE(batch.results.size() == 2);

  // Replay rep 0 by hand with the cell-zero derived seed.
  SampleStream stream(batch.instance,
                      derive_seed(cfg.base_seed, 0, ModelKind::quadratic, 0));
  const TrainResult tr =
      train(batch.instance, batch.schedule, stream, ModelKind::quadratic,
            cfg.init_policy.to_init_spec(),
            default_phase_checkpoints(batch.schedule));
  REQUIRE_FALSE(tr.diverged);
  REQUIRE(batch.results[0].final_params.size() == tr.final_params.size());
  for (std::size_t i = 0; i < tr.final_params.size(); ++i) {
    CHECK(batch.results[0].final_params[i] == tr.final_params[i]);
  }
  CHECK(batch.results[0].checkpoints.size() == tr.checkpoints.size());
}

TEST_CASE("phase boxes report full coverage for trajectories at the target") {
  const ProblemInstance inst =
      make_instance(3.0, 2.0, 10, Ambient::finite(10), 0.0);
  const StepSchedule sched = make_schedule(100, 0.1);
  CHECK(sched.t1 == 17);
  const std::vector<TrainResult> results{pinned_result(inst, sched, 1.0),
                                         pinned_result(inst, sched, 1.0)};
  const PhaseBoxReport rep = phase_box_report(inst, results, sched, 0.5);
  CHECK(rep.effective_dim == 6);  // floor(100^0.4)
  CHECK(rep.t1 == 17);
  CHECK(rep.n_reps_used == 2);
  CHECK(rep.n_reps_diverged == 0);
  CHECK(rep.n_phase2_checks == 6);  // checkpoints {58, 79, 100} per rep
  CHECK(rep.phase1_hit_fraction == 1.0);
  CHECK(rep.phase1_tail_fraction == 1.0);
  CHECK(rep.phase2_confinement_fraction == 1.0);
}

TEST_CASE("phase boxes flag trajectories pinned away from the target") {
  const ProblemInstance inst =
      make_instance(3.0, 2.0, 10, Ambient::finite(10), 0.0);
  const StepSchedule sched = make_schedule(100, 0.1);

  // 0.4 vstar sits below the half-width-0.5 box and the phase-two floor,
  // but within the loose tail ceiling.
  const std::vector<TrainResult> low{pinned_result(inst, sched, 0.4)};
  const PhaseBoxReport rep = phase_box_report(inst, low, sched, 0.5);
  CHECK(rep.phase1_hit_fraction == 0.0);
  CHECK(rep.phase1_tail_fraction == 1.0);
  CHECK(rep.phase2_confinement_fraction == 0.0);

  // Sign flips are invisible: boxes act on magnitudes.
  const std::vector<TrainResult> mirrored{pinned_result(inst, sched, -1.0)};
  const PhaseBoxReport rep2 = phase_box_report(inst, mirrored, sched, 0.5);
  CHECK(rep2.phase1_hit_fraction == 1.0);
  CHECK(rep2.phase2_confinement_fraction == 1.0);
}

TEST_CASE("phase boxes exclude diverged repetitions and count them") {
  const ProblemInstance inst =
      make_instance(3.0, 2.0, 10, Ambient::finite(10), 0.0);
  const StepSchedule sched = make_schedule(100, 0.1);
  TrainResult bad = pinned_result(inst, sched, 50.0);
  bad.diverged = true;
  bad.divergence_step = 3;
  const std::vector<TrainResult> mixed{pinned_result(inst, sched, 1.0), bad};
  const PhaseBoxReport rep = phase_box_report(inst, mixed, sched, 0.5);
  CHECK(rep.n_reps_used == 1);
  CHECK(rep.n_reps_diverged == 1);
  CHECK(rep.phase1_hit_fraction == 1.0);
  CHECK(rep.phase2_confinement_fraction == 1.0);
}

TEST_CASE("a saturated block leaves no tail coordinates to check") {
  // M = 2 and T = 100 give D = M; the tail box is vacuous and reports 1
  // even when the head box misses.
  const ProblemInstance inst =
      make_instance(3.0, 2.0, 2, Ambient::finite(2), 0.0);
  const StepSchedule sched = make_schedule(100, 0.1);
  const std::vector<TrainResult> high{pinned_result(inst, sched, 3.0)};
  const PhaseBoxReport rep = phase_box_report(inst, high, sched, 0.5);
  CHECK(rep.effective_dim == 2);
  CHECK(rep.phase1_hit_fraction == 0.0);
  CHECK(rep.phase1_tail_fraction == 1.0);
  CHECK(rep.phase2_confinement_fraction == 0.0);
}

TEST_CASE("phase boxes demand the checkpoints they consume") {
  const ProblemInstance inst =
      make_instance(3.0, 2.0, 10, Ambient::finite(10), 0.0);
  const StepSchedule sched = make_schedule(100, 0.1);
  TrainResult no_t1 = pinned_result(inst, sched, 1.0);
  no_t1.checkpoints.erase(no_t1.checkpoints.begin());  // drop t = t1
  CHECK_THROWS_AS(phase_box_report(inst, {no_t1}, sched, 0.5),
                  MissingCheckpointError);

  TrainResult no_late = pinned_result(inst, sched, 1.0);
  no_late.checkpoints.resize(1);  // keep only t = t1
  CHECK_THROWS_AS(phase_box_report(inst, {no_late}, sched, 0.5),
                  MissingCheckpointError);

  const std::vector<TrainResult> good{pinned_result(inst, sched, 1.0)};
  CHECK_THROWS_AS(phase_box_report(inst, good, sched, 0.0), InvalidScaleError);
  CHECK_THROWS_AS(phase_box_report(inst, good, sched, 1.0), InvalidScaleError);
  CHECK_THROWS_AS(phase_box_report(inst, {}, sched, 0.5), EmptyInputError);
}

}  // TEST_SUITE
