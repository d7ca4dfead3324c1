#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "quadsgd/model_kind.hpp"

namespace quadsgd {

// Subcommand entry points. Each returns a process exit code (0 on success)
// and reports failures as one "error: ..." line on err, so they can be
// driven in-process by tests as well as by the CLI binary.

// Prints the predicted rate exponents for (alpha, beta) and, when a budget
// is given, the best block-size/horizon split of that budget.
int cmd_rates(double alpha, double beta, std::optional<double> budget,
              std::ostream& out, std::ostream& err);

// Runs the configured sweep and writes <output>.csv plus
// <output>.summary.json. Parent directories are created as needed.
int cmd_sweep(const std::string& config_path, int threads,
              std::optional<std::uint64_t> seed_override, std::ostream& out,
              std::ostream& err);

// Reads a sweep CSV, aggregates the rows for one model kind, and prints the
// learning-curve fit as JSON.
int cmd_fit(const std::string& csv_path, ModelKind kind, std::ostream& out,
            std::ostream& err);

// Runs repeated quadratic-model trajectories for the config's first grid
// cell and prints the two-phase box diagnostics as JSON. stub_at_vstar
// replaces training with trajectories pinned at the ground truth — a
// self-check that the box logic reports full coverage there.
int cmd_diagnose(const std::string& config_path, int threads, double c1,
                 bool stub_at_vstar,
                 std::optional<std::uint64_t> seed_override, std::ostream& out,
                 std::ostream& err);

}  // namespace quadsgd
