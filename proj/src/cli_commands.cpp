#include "quadsgd/cli.hpp"

#include <filesystem>
#include <fstream>

#include "quadsgd/experiment_io.hpp"
#include "quadsgd/harness.hpp"
#include "quadsgd/risk.hpp"
#include "quadsgd/theory.hpp"

namespace quadsgd {

namespace {

using nlohmann::json;

ExperimentConfig load_with_override(const std::string& path,
                                    std::optional<std::uint64_t> seed) {
  ExperimentConfig cfg = load_config(path);
  if (seed) cfg.base_seed = *seed;
  return cfg;
}

void create_parent_dirs(const std::string& prefix) {
  const std::filesystem::path parent =
      std::filesystem::path(prefix).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace

int cmd_rates(double alpha, double beta, std::optional<double> budget,
              std::ostream& out, std::ostream& err) {
  try {
    const RatePrediction quad =
        rate_exponent(alpha, beta, RateModel::quadratic);
    const RatePrediction lin = rate_exponent(alpha, beta, RateModel::linear);
    const RatePrediction info =
        rate_exponent(alpha, beta, RateModel::info_lower);
    out << "regime:                 " << to_string(quad.regime) << "\n";
    out << "quadratic exponent:     " << format_double(quad.exponent) << "\n";
    out << "linear exponent:        " << format_double(lin.exponent) << "\n";
    out << "info lower bound:       " << format_double(info.exponent) << "\n";
    if (budget) {
      const Allocation a = optimal_allocation(*budget, alpha, beta);
      out << "budget split:           model_size=" << a.model_size
          << " steps=" << a.steps << "\n";
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_sweep(const std::string& config_path, int threads,
              std::optional<std::uint64_t> seed_override, std::ostream& out,
              std::ostream& err) {
  try {
    const ExperimentConfig cfg = load_with_override(config_path, seed_override);
    const std::vector<SweepRecord> records = run_sweep(cfg, threads);
    const std::vector<AggregateRow> aggregates = aggregate(records);
    const std::vector<FitRow> fits =
        fit_aggregates(cfg.alpha, cfg.beta, aggregates);

    create_parent_dirs(cfg.output);
    const std::string csv_path = cfg.output + ".csv";
    const std::string summary_path = cfg.output + ".summary.json";
    write_csv(csv_path, records);
    std::ofstream summary(summary_path);
    if (!summary) {
      throw IoError("cannot open '" + summary_path + "' for writing");
    }
    summary << summary_json(cfg, aggregates, fits).dump(2) << '\n';
    if (!summary.good()) throw IoError("write to '" + summary_path + "' failed");

    // Progress notes are diagnostics; data goes to the two files only.
    (void)out;
    err << "wrote " << csv_path << " (" << records.size() << " records)\n";
    err << "wrote " << summary_path << " (" << aggregates.size()
        << " cells, " << fits.size() << " fits)\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_fit(const std::string& csv_path, ModelKind kind, std::ostream& out,
            std::ostream& err) {
  try {
    const std::vector<SweepRecord> all = read_csv(csv_path);
    std::vector<SweepRecord> records;
    for (const SweepRecord& r : all) {
      if (r.model_kind == kind) records.push_back(r);
    }
    if (records.empty()) {
      throw EmptyInputError(std::string("no records for model kind '") +
                            to_string(kind) + "' in " + csv_path);
    }
    const double alpha = records.front().alpha;
    const double beta = records.front().beta;
    std::int64_t m = records.front().M;
    for (const SweepRecord& r : records) {
      if (r.alpha != alpha || r.beta != beta) {
        throw ConfigError("fit needs a single (alpha, beta), found several");
      }
      if (r.M != m) {
        throw ConfigError("fit needs a single model size, found several");
      }
    }
    const std::vector<FitRow> fits =
        fit_aggregates(alpha, beta, aggregate(records));
    if (fits.empty()) {
      throw TooFewPointsError(
          "fewer than two usable horizons after aggregation");
    }
    out << fit_to_json(fits.front()).dump(2) << '\n';
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_diagnose(const std::string& config_path, int threads, double c1,
                 bool stub_at_vstar,
                 std::optional<std::uint64_t> seed_override, std::ostream& out,
                 std::ostream& err) {
  try {
    const ExperimentConfig cfg = load_with_override(config_path, seed_override);
    if (cfg.t_grid.empty() || cfg.m_grid.empty()) {
      throw EmptyInputError("config needs at least one grid cell");
    }
    const std::int64_t T = cfg.t_grid.front();

    TrajectoryBatch batch;
    if (stub_at_vstar) {
      batch.instance = make_instance(cfg.alpha, cfg.beta, cfg.m_grid.front(),
                                     cfg.ambient, cfg.noise_sigma,
                                     cfg.lambda_scale, cfg.vstar_scale);
      batch.schedule = schedule_for_config(cfg, batch.instance, T);
      std::vector<double> vstar(
          static_cast<std::size_t>(batch.instance.model_size));
      for (std::size_t i = 0; i < vstar.size(); ++i) {
        vstar[i] = vstar_at(batch.instance, static_cast<std::int64_t>(i) + 1);
      }
      const double excess =
          excess_risk_quadratic(batch.instance, vstar).excess;
      TrainResult tr;
      tr.final_params = vstar;
      tr.steps_run = batch.schedule.total_steps;
      for (std::int64_t t : default_phase_checkpoints(batch.schedule)) {
        tr.checkpoints.push_back({t, vstar, excess});
      }
      batch.results.assign(static_cast<std::size_t>(cfg.repetitions), tr);
    } else {
      batch = run_trajectories(cfg, ModelKind::quadratic, {}, threads);
    }

    json j;
    j["version"] = "v1";
    j["model_kind"] = "quadratic";
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["T"] = batch.schedule.total_steps;
    j["M"] = batch.instance.model_size;
    j["eta0"] = batch.schedule.eta0;
    j["h"] = batch.schedule.h;
    j["t1"] = batch.schedule.t1;
    j["log_base"] = to_string(cfg.log_base);
    j["repetitions"] = cfg.repetitions;
    j["c1"] = c1;
    if (T == 0) {
      // Nothing was trained; the phase diagnostics are undefined.
      j["effective_dim"] = nullptr;
      j["n_reps_used"] = 0;
      j["n_reps_diverged"] = 0;
      j["n_phase2_checks"] = 0;
      j["phase1_hit_fraction"] = nullptr;
      j["phase1_tail_fraction"] = nullptr;
      j["phase2_confinement_fraction"] = nullptr;
    } else {
      const PhaseBoxReport report =
          phase_box_report(batch.instance, batch.results, batch.schedule, c1);
      j["effective_dim"] = report.effective_dim;
      j["n_reps_used"] = report.n_reps_used;
      j["n_reps_diverged"] = report.n_reps_diverged;
      j["n_phase2_checks"] = report.n_phase2_checks;
      j["phase1_hit_fraction"] = report.phase1_hit_fraction;
      j["phase1_tail_fraction"] = report.phase1_tail_fraction;
      j["phase2_confinement_fraction"] = report.phase2_confinement_fraction;
    }
    out << j.dump(2) << '\n';
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace quadsgd
