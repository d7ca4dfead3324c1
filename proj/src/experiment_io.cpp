#include "quadsgd/experiment_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace quadsgd {

namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& msg) {
  throw ConfigError("config: " + msg);
}

const json& require_key(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) bad_config(std::string("missing key '") + key + "'");
  return *it;
}

double as_double(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_number()) bad_config(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t as_int64(const json& v, const std::string& what) {
  if (!v.is_number_integer()) bad_config("'" + what + "' must be an integer");
  return v.get<std::int64_t>();
}

std::vector<std::int64_t> as_int_array(const json& j, const char* key,
                                       std::int64_t min_value) {
  const json& v = require_key(j, key);
  if (!v.is_array()) bad_config(std::string("'") + key + "' must be an array");
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const json& e : v) {
    const std::int64_t x = as_int64(e, key);
    if (x < min_value) {
      bad_config(std::string("'") + key + "' entries must be >= " +
                 std::to_string(min_value));
    }
    out.push_back(x);
  }
  return out;
}

// Policies are single-key objects: {"auto": c} or {"fixed": value}.
std::pair<bool, double> parse_policy(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_object() || v.size() != 1) {
    bad_config(std::string("'") + key +
               "' must be an object with exactly one of 'auto'/'fixed'");
  }
  const auto it = v.begin();
  const std::string mode = it.key();
  if (mode != "auto" && mode != "fixed") {
    bad_config(std::string("'") + key + "' mode must be 'auto' or 'fixed'");
  }
  if (!it.value().is_number()) {
    bad_config(std::string("'") + key + "' value must be a number");
  }
  return {mode == "auto", it.value().get<double>()};
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  // Shortest decimal form that parses back to the same double; NaN and
  // infinities fall through to the final %.17g spelling.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return buf;
}

ExperimentConfig parse_config_json(const json& j) {
  if (!j.is_object()) bad_config("top level must be an object");
  static const std::set<std::string> known = {
      "version",      "alpha",       "beta",        "noise_sigma",
      "lambda_scale", "vstar_scale", "ambient",     "t_grid",
      "m_grid",       "repetitions", "base_seed",   "model_kinds",
      "eta_policy",   "init_policy", "log_base",    "checkpoints",
      "output"};
  for (const auto& item : j.items()) {
    if (known.find(item.key()) == known.end()) {
      bad_config("unknown key '" + item.key() + "'");
    }
  }
  const json& version = require_key(j, "version");
  if (!version.is_string() || version.get<std::string>() != "v1") {
    bad_config("'version' must be the string \"v1\"");
  }

  ExperimentConfig cfg;
  cfg.alpha = as_double(j, "alpha");
  cfg.beta = as_double(j, "beta");
  cfg.noise_sigma = as_double(j, "noise_sigma");
  cfg.lambda_scale = as_double(j, "lambda_scale");
  cfg.vstar_scale = as_double(j, "vstar_scale");

  const json& ambient = require_key(j, "ambient");
  if (ambient.is_string() && ambient.get<std::string>() == "analytic") {
    cfg.ambient = Ambient::analytic();
  } else if (ambient.is_object() && ambient.size() == 1 &&
             ambient.contains("finite_d")) {
    cfg.ambient = Ambient::finite(as_int64(ambient["finite_d"], "finite_d"));
  } else {
    bad_config("'ambient' must be \"analytic\" or {\"finite_d\": N}");
  }

  cfg.t_grid = as_int_array(j, "t_grid", 0);
  cfg.m_grid = as_int_array(j, "m_grid", 1);
  if (cfg.t_grid.empty()) bad_config("'t_grid' must not be empty");
  if (cfg.m_grid.empty()) bad_config("'m_grid' must not be empty");

  const json& reps = require_key(j, "repetitions");
  cfg.repetitions = as_int64(reps, "repetitions");
  if (cfg.repetitions < 1) bad_config("'repetitions' must be >= 1");

  const json& seed = require_key(j, "base_seed");
  if (!seed.is_number_integer() ||
      (seed.is_number_integer() && !seed.is_number_unsigned() &&
       seed.get<std::int64_t>() < 0)) {
    bad_config("'base_seed' must be a non-negative integer");
  }
  cfg.base_seed = seed.get<std::uint64_t>();

  const json& kinds = require_key(j, "model_kinds");
  if (!kinds.is_array() || kinds.empty()) {
    bad_config("'model_kinds' must be a non-empty array");
  }
  for (const json& k : kinds) {
    if (!k.is_string()) bad_config("'model_kinds' entries must be strings");
    const ModelKind kind = model_kind_from_string(k.get<std::string>());
    for (ModelKind seen : cfg.model_kinds) {
      if (seen == kind) bad_config("'model_kinds' lists a kind twice");
    }
    cfg.model_kinds.push_back(kind);
  }

  const auto [eta_auto, eta_value] = parse_policy(j, "eta_policy");
  if (!(eta_value > 0.0) || !std::isfinite(eta_value)) {
    bad_config("'eta_policy' value must be finite and > 0");
  }
  cfg.eta_policy = eta_auto ? EtaPolicy::auto_scaled(eta_value)
                            : EtaPolicy::fixed(eta_value);

  const auto [init_auto, init_value] = parse_policy(j, "init_policy");
  if (!std::isfinite(init_value) || (init_auto && !(init_value > 0.0))) {
    bad_config("'init_policy' value must be finite (and > 0 for auto)");
  }
  cfg.init_policy = init_auto ? InitPolicy::auto_scaled(init_value)
                              : InitPolicy::fixed(init_value);

  const json& lb = require_key(j, "log_base");
  if (!lb.is_string()) bad_config("'log_base' must be a string");
  const std::string lbs = lb.get<std::string>();
  if (lbs == "natural") {
    cfg.log_base = LogBase::natural;
  } else if (lbs == "base2") {
    cfg.log_base = LogBase::base2;
  } else {
    bad_config("'log_base' must be 'natural' or 'base2'");
  }

  cfg.checkpoints = as_int_array(j, "checkpoints", 0);

  const json& output = require_key(j, "output");
  if (!output.is_string() || output.get<std::string>().empty()) {
    bad_config("'output' must be a non-empty string");
  }
  cfg.output = output.get<std::string>();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config_json(j);
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["version"] = "v1";
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["noise_sigma"] = cfg.noise_sigma;
  j["lambda_scale"] = cfg.lambda_scale;
  j["vstar_scale"] = cfg.vstar_scale;
  if (cfg.ambient.is_finite()) {
    j["ambient"] = json{{"finite_d", cfg.ambient.d}};
  } else {
    j["ambient"] = "analytic";
  }
  j["t_grid"] = cfg.t_grid;
  j["m_grid"] = cfg.m_grid;
  j["repetitions"] = cfg.repetitions;
  j["base_seed"] = cfg.base_seed;
  json kinds = json::array();
  for (ModelKind k : cfg.model_kinds) kinds.push_back(to_string(k));
  j["model_kinds"] = kinds;
  j["eta_policy"] =
      json{{cfg.eta_policy.kind == EtaPolicy::Kind::auto_scaled ? "auto"
                                                                : "fixed",
            cfg.eta_policy.value}};
  j["init_policy"] =
      json{{cfg.init_policy.kind == InitPolicy::Kind::auto_scaled ? "auto"
                                                                  : "fixed",
            cfg.init_policy.value}};
  j["log_base"] = to_string(cfg.log_base);
  j["checkpoints"] = cfg.checkpoints;
  j["output"] = cfg.output;
  return j;
}

void write_csv(const std::string& path,
               const std::vector<SweepRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << kCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    out << r.grid_id << ',' << r.T << ',' << r.M << ','
        << format_double(r.alpha) << ',' << format_double(r.beta) << ','
        << to_string(r.model_kind) << ',' << r.rep << ',' << r.seed << ','
        << format_double(r.excess_risk) << ',' << (r.diverged ? 1 : 0) << ','
        << format_double(r.wall_ms) << '\n';
  }
  if (!out.good()) throw IoError("write to '" + path + "' failed");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

[[noreturn]] void bad_row(const std::string& path, std::size_t line_no,
                          const std::string& msg) {
  throw IoError(path + ":" + std::to_string(line_no) + ": " + msg);
}

std::int64_t parse_int64(const std::string& s, const std::string& path,
                         std::size_t line_no) {
  if (s.empty()) bad_row(path, line_no, "empty integer field");
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) {
    bad_row(path, line_no, "bad integer '" + s + "'");
  }
  return v;
}

std::uint64_t parse_uint64(const std::string& s, const std::string& path,
                           std::size_t line_no) {
  if (s.empty() || s[0] == '-') bad_row(path, line_no, "bad seed '" + s + "'");
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) bad_row(path, line_no, "bad seed '" + s + "'");
  return v;
}

double parse_dbl(const std::string& s, const std::string& path,
                 std::size_t line_no) {
  if (s.empty()) bad_row(path, line_no, "empty number field");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    bad_row(path, line_no, "bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<SweepRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw IoError(path + ": missing or malformed header row");
  }
  std::vector<SweepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 11) {
      bad_row(path, line_no,
              "expected 11 fields, got " + std::to_string(f.size()));
    }
    SweepRecord r;
    r.grid_id = parse_int64(f[0], path, line_no);
    r.T = parse_int64(f[1], path, line_no);
    r.M = parse_int64(f[2], path, line_no);
    r.alpha = parse_dbl(f[3], path, line_no);
    r.beta = parse_dbl(f[4], path, line_no);
    try {
      r.model_kind = model_kind_from_string(f[5]);
    } catch (const ConfigError&) {
      bad_row(path, line_no, "bad model kind '" + f[5] + "'");
    }
    r.rep = parse_int64(f[6], path, line_no);
    r.seed = parse_uint64(f[7], path, line_no);
    r.excess_risk = parse_dbl(f[8], path, line_no);
    if (f[9] == "0") {
      r.diverged = false;
    } else if (f[9] == "1") {
      r.diverged = true;
    } else {
      bad_row(path, line_no, "diverged flag must be 0 or 1");
    }
    r.wall_ms = parse_dbl(f[10], path, line_no);
    records.push_back(std::move(r));
  }
  return records;
}

bool records_equivalent(const SweepRecord& a, const SweepRecord& b) {
  const bool risk_same =
      (a.excess_risk == b.excess_risk) ||
      (std::isnan(a.excess_risk) && std::isnan(b.excess_risk));
  return a.grid_id == b.grid_id && a.T == b.T && a.M == b.M &&
         a.alpha == b.alpha && a.beta == b.beta &&
         a.model_kind == b.model_kind && a.rep == b.rep && a.seed == b.seed &&
         risk_same && a.diverged == b.diverged;
}

nlohmann::json aggregate_to_json(const AggregateRow& row) {
  json j;
  j["grid_id"] = row.grid_id;
  j["T"] = row.T;
  j["M"] = row.M;
  j["model_kind"] = to_string(row.model_kind);
  j["n_ok"] = row.n_ok;
  j["n_diverged"] = row.n_diverged;
  // NaN moments (no surviving repetitions) serialize as null.
  j["mean"] = row.mean;
  j["stddev"] = row.stddev;
  j["std_error"] = row.std_error;
  j["median"] = row.median;
  return j;
}

nlohmann::json fit_to_json(const FitRow& fit) {
  json j;
  j["model_kind"] = to_string(fit.model_kind);
  j["M"] = fit.M;
  j["slope"] = fit.fit.slope;
  j["intercept"] = fit.fit.intercept;
  j["r_squared"] = fit.fit.r_squared;
  j["n_points"] = fit.fit.n_points;
  j["theory_exponent"] = fit.theory.exponent;
  j["regime"] = to_string(fit.regime);
  j["gap"] = fit.gap;
  return j;
}

nlohmann::json summary_json(const ExperimentConfig& config,
                            const std::vector<AggregateRow>& aggregates,
                            const std::vector<FitRow>& fits) {
  json j;
  j["version"] = "v1";
  j["config"] = config_to_json(config);
  json aggs = json::array();
  for (const AggregateRow& row : aggregates) aggs.push_back(aggregate_to_json(row));
  j["aggregates"] = aggs;
  json fs = json::array();
  for (const FitRow& fit : fits) fs.push_back(fit_to_json(fit));
  j["fits"] = fs;
  return j;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::beta_dominant:
      return "BetaDominant";
    case Regime::alpha_dominant:
      return "AlphaDominant";
    case Regime::model_limited:
      return "ModelLimited";
  }
  return "unknown";
}

const char* to_string(LogBase base) {
  return base == LogBase::natural ? "natural" : "base2";
}

}  // namespace quadsgd
