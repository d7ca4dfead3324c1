#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "quadsgd/harness.hpp"

namespace quadsgd {

// CSV column order for sweep records. Readers require this exact header.
inline constexpr const char* kCsvHeader =
    "grid_id,T,M,alpha,beta,model_kind,rep,seed,excess_risk,diverged,wall_ms";

// Shortest exact decimal form of a double ("%.17g" trimmed): parsing it
// back yields the identical bits, so files round-trip losslessly.
std::string format_double(double x);

// Strict config schema (version "v1"). Every key is required, unknown keys
// are rejected. See README for the full layout and an example.
ExperimentConfig parse_config_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& config);

void write_csv(const std::string& path,
               const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_csv(const std::string& path);

// Equality on everything except wall_ms (timings never reproduce).
bool records_equivalent(const SweepRecord& a, const SweepRecord& b);

nlohmann::json aggregate_to_json(const AggregateRow& row);
nlohmann::json fit_to_json(const FitRow& fit);

// Summary document written next to the CSV: config echo plus per-cell
// aggregates plus per-curve fits.
nlohmann::json summary_json(const ExperimentConfig& config,
                            const std::vector<AggregateRow>& aggregates,
                            const std::vector<FitRow>& fits);

const char* to_string(Regime regime);
const char* to_string(LogBase base);

}  // namespace quadsgd
