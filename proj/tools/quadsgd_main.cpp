#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "quadsgd/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"SGD scaling-law experiments on power-law regression"};
  app.require_subcommand(1);

  double alpha = 0.0;
  double beta = 0.0;
  double budget = 0.0;
  CLI::App* rates =
      app.add_subcommand("rates", "print predicted rate exponents");
  rates->add_option("--alpha", alpha, "spectral decay exponent (> 1)")
      ->required();
  rates->add_option("--beta", beta, "source decay exponent (> 1)")->required();
  CLI::Option* budget_opt = rates->add_option(
      "--budget", budget, "total sample budget M*T to split optimally");

  std::string config_path;
  int threads = 1;
  std::uint64_t seed = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "run a configured sweep");
  sweep->add_option("--config", config_path, "experiment config JSON")
      ->required();
  sweep->add_option("--threads", threads, "worker threads (default 1)");
  CLI::Option* sweep_seed =
      sweep->add_option("--seed", seed, "override the config base_seed");

  std::string csv_path;
  std::string model = "quadratic";
  CLI::App* fit = app.add_subcommand("fit", "fit a learning curve from a CSV");
  fit->add_option("--input", csv_path, "sweep CSV to fit")->required();
  fit->add_option("--model", model, "model kind: quadratic or linear")
      ->check(CLI::IsMember({"quadratic", "linear"}));

  std::string diag_config;
  int diag_threads = 1;
  double c1 = 0.5;
  std::uint64_t diag_seed = 0;
  bool stub = false;
  CLI::App* diagnose =
      app.add_subcommand("diagnose", "two-phase trajectory diagnostics");
  diagnose->add_option("--config", diag_config, "experiment config JSON")
      ->required();
  diagnose->add_option("--threads", diag_threads, "worker threads (default 1)");
  diagnose->add_option("--c1", c1, "phase-one box half-width, in (0, 1)");
  CLI::Option* diag_seed_opt =
      diagnose->add_option("--seed", diag_seed, "override the config base_seed");
  diagnose->add_flag("--stub-at-vstar", stub,
                     "skip training; pin trajectories at the ground truth");

  CLI11_PARSE(app, argc, argv);

  if (rates->parsed()) {
    std::optional<double> b;
    if (budget_opt->count() > 0) b = budget;
    return quadsgd::cmd_rates(alpha, beta, b, std::cout, std::cerr);
  }
  if (sweep->parsed()) {
    std::optional<std::uint64_t> s;
    if (sweep_seed->count() > 0) s = seed;
    return quadsgd::cmd_sweep(config_path, threads, s, std::cout, std::cerr);
  }
  if (fit->parsed()) {
    return quadsgd::cmd_fit(csv_path, quadsgd::model_kind_from_string(model),
                            std::cout, std::cerr);
  }
  if (diagnose->parsed()) {
    std::optional<std::uint64_t> s;
    if (diag_seed_opt->count() > 0) s = diag_seed;
    return quadsgd::cmd_diagnose(diag_config, diag_threads, c1, stub, s,
                                 std::cout, std::cerr);
  }
  return 1;
}
