// spreadlab_cli: run, sweep, counterexample, oracle-check, monitors.
// Exit codes: 0 success, 1 acceptance or monitor failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spreadlab/harness.hpp"
#include "spreadlab/invariants.hpp"
#include "spreadlab/oracle.hpp"
#include "spreadlab/persistence.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spreadlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw option values; each one is filled from the config file first and
// then from any flag given on the command line.
struct Settings {
  std::string algo = "spea2-ss";
  std::size_t n = 0;
  std::size_t mu = 0;
  std::size_t lambda = 1;
  std::string mutation = "one-bit";
  std::string metric = "euclidean";
  std::string init = "uniform";
  std::int64_t c = 0;
  std::string values;
  std::string seeds = "0";
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> iterations;
  std::uint64_t thin = 1;
  std::string representation = "ones-count";
  std::string out = "spreadlab_out";
  int threads = 0;
  bool strict = false;
  std::string grid;
  std::size_t samples = 100000;
  double tolerance = 0.01;
};

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const long long v = std::stoll(item, &used);
    if (used != item.size()) throw UsageError("not an integer: " + item);
    out.push_back(v);
  }
  return out;
}

// "a..b" (inclusive), "a,b,c" or a single seed.
std::vector<std::uint64_t> parse_seeds(const std::string& text, std::uint64_t offset) {
  std::vector<std::uint64_t> out;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const auto lo = std::stoull(text.substr(0, dots));
      const auto hi = std::stoull(text.substr(dots + 2));
      if (hi < lo) throw UsageError("empty seed range: " + text);
      for (auto s = lo; s <= hi; ++s) out.push_back(s + offset);
      return out;
    }
    for (auto v : parse_int_list(text)) {
      if (v < 0) throw UsageError("negative seed: " + text);
      out.push_back(static_cast<std::uint64_t>(v) + offset);
    }
  } catch (const std::logic_error&) {
    throw UsageError("bad seed list: " + text);
  }
  return out;
}

std::uint64_t seed_offset() {
  const char* env = std::getenv("SEED_OFFSET");
  if (!env || !*env) return 0;
  try {
    return std::stoull(env);
  } catch (const std::logic_error&) {
    throw UsageError(std::string("SEED_OFFSET is not an unsigned integer: ") + env);
  }
}

void apply_config_file(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  try {
    auto take = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    take("algo", s.algo);
    take("n", s.n);
    take("mu", s.mu);
    take("lambda", s.lambda);
    take("mutation", s.mutation);
    take("metric", s.metric);
    take("init", s.init);
    take("c", s.c);
    take("thin", s.thin);
    take("representation", s.representation);
    take("threads", s.threads);
    take("strict-invariants", s.strict);
    take("grid", s.grid);
    take("samples", s.samples);
    if (j.contains("budget")) s.budget = j.at("budget").get<std::uint64_t>();
    if (j.contains("iterations")) s.iterations = j.at("iterations").get<std::uint64_t>();
    if (j.contains("seeds")) {
      const auto& v = j.at("seeds");
      if (v.is_string()) {
        s.seeds = v.get<std::string>();
      } else if (v.is_array()) {
        s.seeds.clear();
        for (const auto& x : v) s.seeds += std::to_string(x.get<std::uint64_t>()) + ",";
      } else {
        s.seeds = std::to_string(v.get<std::uint64_t>());
      }
    }
    if (j.contains("values")) {
      const auto& v = j.at("values");
      if (v.is_string()) {
        s.values = v.get<std::string>();
      } else {
        s.values.clear();
        for (const auto& x : v) s.values += std::to_string(x.get<std::int64_t>()) + ",";
      }
    }
  } catch (const json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
}

ExperimentConfig build_config(const Settings& s) {
  ExperimentConfig cfg;
  try {
    cfg.algorithm = parse_algorithm(s.algo);
    cfg.mutation = parse_mutation_kind(s.mutation);
    cfg.metric = parse_metric(s.metric);
    cfg.init = parse_init_kind(s.init);
    cfg.representation = parse_representation(s.representation);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.n = s.n;
  cfg.lambda = s.lambda;
  cfg.c = s.c;
  cfg.sample_every = s.thin;
  cfg.seeds = parse_seeds(s.seeds, seed_offset());
  if (cfg.init == InitKind::Explicit) {
    cfg.init_values = parse_int_list(s.values);
    if (s.mu == 0 && !cfg.init_values.empty()) cfg.mu = cfg.init_values.size();
  }
  cfg.mu = s.mu != 0 ? s.mu : cfg.mu;
  // Counterexample populations have a fixed size; fill it in when omitted.
  if (cfg.init == InitKind::Counterexample && s.mu == 0 && s.c >= 2 && s.n > 0)
    cfg.mu = s.n / static_cast<std::size_t>(s.c) + 1;
  if (cfg.algorithm == Algorithm::Spea2SteadyState) cfg.lambda = 1;
  cfg.stop.max_evaluations = s.budget;
  cfg.stop.max_iterations = s.iterations;
  // Default budgets: n^3 iterations from the counterexample, otherwise ten
  // times mu^2 n ln(mu) ln(n) evaluations.
  if (!s.budget && !s.iterations && cfg.n > 0 && cfg.mu > 0) {
    if (cfg.init == InitKind::Counterexample) {
      cfg.stop.max_iterations = std::uint64_t{cfg.n} * cfg.n * cfg.n;
    } else {
      const double n = static_cast<double>(cfg.n);
      const double mu = std::max(2.0, static_cast<double>(cfg.mu));
      const double env = 10.0 * optimal_spread_envelope(std::max(n, 2.0), mu);
      cfg.stop.max_evaluations = static_cast<std::uint64_t>(std::ceil(env)) + cfg.mu;
    }
  }
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

fs::path prepare_out(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory " + out + ": " + ec.message());
  return dir;
}

std::ofstream open_artifact(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  std::cout << "wrote " << path.string() << '\n';
  return f;
}

void write_json(const fs::path& path, const json& j) { open_artifact(path) << j.dump(2) << '\n'; }

struct RunArtifacts {
  std::size_t reports = 0;
  std::size_t violations = 0;
  std::size_t reached = 0;
  std::size_t runs = 0;
};

RunArtifacts run_and_write(const ExperimentConfig& cfg, const Settings& s, const fs::path& dir,
                           json extra = json::object()) {
  const auto records = run_replications(cfg, s.threads);
  RunArtifacts a;
  a.runs = records.size();
  std::vector<MonitorReport> all_reports;
  for (const auto& r : records) {
    a.reached += r.reached_optimal ? 1 : 0;
    a.reports += r.reports.size();
    a.violations += count_violations(r.reports);
    all_reports.insert(all_reports.end(), r.reports.begin(), r.reports.end());
    if (cfg.sample_every > 0) {
      auto f = open_artifact(dir / ("trajectory_seed" + std::to_string(r.seed) + ".csv"));
      write_trajectory_csv(f, r);
    }
  }
  auto summary = make_summary(cfg, records);
  summary["config"]["seeds"] = cfg.seeds;
  summary["config"]["sample_every"] = cfg.sample_every;
  summary["config"]["representation"] = to_string(cfg.representation);
  if (cfg.stop.max_evaluations) summary["config"]["budget"] = *cfg.stop.max_evaluations;
  if (cfg.stop.max_iterations) summary["config"]["iterations"] = *cfg.stop.max_iterations;
  summary["config"]["strict_invariants"] = s.strict;
  for (auto& [k, v] : extra.items()) summary[k] = v;
  if (cfg.monitors) {
    auto f = open_artifact(dir / "reports.jsonl");
    write_reports_jsonl(f, all_reports);
  }
  write_json(dir / "summary.json", summary);
  std::cout << "runs " << a.runs << ", reached optimal spread " << a.reached << ", monitor reports "
            << a.reports << " (violations " << a.violations << ")\n";
  return a;
}

int cmd_run(const Settings& s) {
  auto cfg = build_config(s);
  cfg.monitors = s.strict;
  const auto dir = prepare_out(s.out);
  const auto a = run_and_write(cfg, s, dir);
  return s.strict && a.reports > 0 ? kExitFailure : kExitOk;
}

int cmd_monitors(const Settings& s) {
  auto cfg = build_config(s);
  cfg.monitors = true;
  const auto dir = prepare_out(s.out);
  const auto a = run_and_write(cfg, s, dir);
  const bool fail = s.strict ? a.reports > 0 : a.violations > 0;
  return fail ? kExitFailure : kExitOk;
}

int cmd_counterexample(const Settings& s) {
  Settings t = s;
  t.init = "counterexample";
  auto cfg = build_config(t);
  cfg.drift_probe = true;
  cfg.monitors = s.strict;
  const auto dir = prepare_out(s.out);
  const auto values = build_counterexample(static_cast<std::int64_t>(cfg.n), cfg.c);
  json layout{{"values", values}};
  std::vector<std::int64_t> gaps;
  for (std::size_t i = 1; i < values.size(); ++i) gaps.push_back(values[i] - values[i - 1]);
  layout["gaps"] = gaps;
  const auto ab = alpha_beta(static_cast<std::int64_t>(cfg.n), static_cast<std::int64_t>(cfg.mu));
  layout["optimal_alpha"] = ab.alpha;
  layout["optimal_beta"] = ab.beta;
  const auto a = run_and_write(cfg, s, dir, json{{"layout", layout}});
  return s.strict && a.reports > 0 ? kExitFailure : kExitOk;
}

int cmd_sweep(const Settings& s) {
  std::vector<std::pair<std::size_t, std::size_t>> grid;
  std::stringstream in(s.grid);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    const auto colon = cell.find(':');
    if (colon == std::string::npos) throw UsageError("grid cells are n:mu, got " + cell);
    try {
      grid.emplace_back(std::stoull(cell.substr(0, colon)), std::stoull(cell.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw UsageError("bad grid cell " + cell);
    }
  }
  if (grid.empty()) throw UsageError("sweep needs --grid n:mu[,n:mu...]");
  // Validate every cell before running any.
  std::vector<ExperimentConfig> cfgs;
  for (const auto& [n, mu] : grid) {
    Settings t = s;
    t.n = n;
    t.mu = mu;
    cfgs.push_back(build_config(t));
  }
  const auto dir = prepare_out(s.out);
  json rows = json::array();
  auto csv = open_artifact(dir / "sweep.csv");
  csv << "n,mu,runs,reached,mean_optimal,median_optimal,mean_extremes,median_extremes,"
         "mean_distinct,median_distinct,envelope_optimal,envelope_extremes,ratio_optimal,"
         "ratio_extremes\n";
  std::vector<double> ns, ext;
  for (const auto& cfg : cfgs) {
    const std::vector<std::pair<std::size_t, std::size_t>> one{{cfg.n, cfg.mu}};
    const auto c = scaling_sweep(one, cfg, s.threads).front();
    csv << c.n << ',' << c.mu << ',' << c.runs << ',' << c.reached << ',' << c.mean_optimal << ','
        << c.median_optimal << ',' << c.mean_extremes << ',' << c.median_extremes << ','
        << c.mean_distinct << ',' << c.median_distinct << ',' << c.envelope_optimal << ','
        << c.envelope_extremes << ',' << c.ratio_optimal << ',' << c.ratio_extremes << '\n';
    rows.push_back({{"n", c.n},
                    {"mu", c.mu},
                    {"runs", c.runs},
                    {"reached", c.reached},
                    {"mean_optimal", c.mean_optimal},
                    {"mean_extremes", c.mean_extremes},
                    {"ratio_optimal", c.ratio_optimal},
                    {"ratio_extremes", c.ratio_extremes}});
    ns.push_back(static_cast<double>(c.n));
    ext.push_back(c.mean_extremes);
  }
  json summary{{"config", to_json(cfgs.front())}, {"cells", rows}};
  summary["config"].erase("n");
  summary["config"].erase("mu");
  summary["config"]["seeds"] = cfgs.front().seeds;
  if (ns.size() >= 2) {
    bool finite = true;
    for (double e : ext) finite = finite && std::isfinite(e) && e > 0;
    if (finite) summary["extremes_loglog_slope"] = loglog_slope(ns, ext);
  }
  write_json(dir / "sweep.json", summary);
  return kExitOk;
}

int cmd_oracle_check(const Settings& s) {
  SteadyStateAlgorithm algo;
  if (s.algo == "spea2-ss") {
    algo = SteadyStateAlgorithm::Spea2;
  } else if (s.algo == "nsga2-ss") {
    algo = SteadyStateAlgorithm::Nsga2;
  } else {
    throw UsageError("oracle-check supports --algo spea2-ss or nsga2-ss");
  }
  if (s.n < 1 || s.n > 6) throw UsageError("oracle-check requires 1 <= --n <= 6");
  if (s.mu != 3) throw UsageError("oracle-check requires --mu 3");
  if (s.samples == 0) throw UsageError("--samples must be positive");
  Representation repr;
  try {
    repr = parse_representation(s.representation);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto seeds = parse_seeds(s.seeds, seed_offset());
  const std::uint64_t seed = seeds.empty() ? 0 : seeds.front();
  const auto dir = prepare_out(s.out);
  const auto rows =
      oracle_sweep(static_cast<std::int64_t>(s.n), s.mu, algo, s.samples, seed, s.threads, repr);
  auto csv = open_artifact(dir / "oracle_check.csv");
  csv << "state,tv,pass\n";
  double worst = 0;
  std::size_t failing = 0;
  for (const auto& r : rows) {
    std::string state;
    for (std::size_t i = 0; i < r.state.size(); ++i)
      state += (i ? " " : "") + std::to_string(r.state[i]);
    const bool ok = r.tv <= s.tolerance;
    failing += ok ? 0 : 1;
    worst = std::max(worst, r.tv);
    csv << state << ',' << r.tv << ',' << (ok ? 1 : 0) << '\n';
  }
  std::cout << rows.size() << " states, max TV " << worst << ", failing " << failing << '\n';
  return failing == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state SPEA2 and NSGA-II spread experiments on OneMinMax"};
  app.require_subcommand(1);
  Settings flags;
  std::string config_path;

  // Options shared by every subcommand; `given` records which ones appeared.
  std::vector<std::pair<CLI::Option*, std::function<void(Settings&)>>> given;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file with option values; flags override it");
    auto opt = [&]<class T>(const std::string& name, T Settings::*member,
                            const std::string& help) {
      auto* o = sub->add_option(name, flags.*member, help);
      given.emplace_back(o, [&flags, member](Settings& t) { t.*member = flags.*member; });
    };
    opt("--algo", &Settings::algo, "spea2-ss | spea2-gen | nsga2-classic | nsga2-ss");
    opt("--n", &Settings::n, "bit-string length");
    opt("--mu", &Settings::mu, "population size (N for NSGA-II)");
    opt("--lambda", &Settings::lambda, "offspring per generation for spea2-gen");
    opt("--mutation", &Settings::mutation, "one-bit | standard-bit");
    opt("--metric", &Settings::metric, "euclidean | first-objective");
    opt("--init", &Settings::init, "uniform | counterexample | values");
    opt("--c", &Settings::c, "counterexample gap");
    opt("--values", &Settings::values, "explicit first-objective values, comma separated");
    opt("--seeds", &Settings::seeds, "seed range a..b or list a,b,c");
    opt("--budget", &Settings::budget, "evaluation budget");
    opt("--iterations", &Settings::iterations, "iteration budget");
    opt("--thin", &Settings::thin, "keep every k-th trajectory sample (0 = none)");
    opt("--representation", &Settings::representation, "ones-count | genome");
    opt("--out", &Settings::out, "output directory");
    opt("--threads", &Settings::threads, "replication threads (0 = OpenMP default)");
    auto* strict = sub->add_flag("--strict-invariants", flags.strict,
                                 "enable monitors and exit 1 on any report");
    given.emplace_back(strict, [&](Settings& t) { t.strict = flags.strict; });
  };

  auto* run = app.add_subcommand("run", "replicated runs with trajectory CSVs and a summary");
  auto* sweep = app.add_subcommand("sweep", "scaling sweep over an (n, mu) grid");
  auto* cex = app.add_subcommand("counterexample", "runs from the counterexample with the drift probe");
  auto* oracle = app.add_subcommand("oracle-check", "Monte Carlo vs exact successor distributions");
  auto* mon = app.add_subcommand("monitors", "runs with the invariant monitors enabled");
  for (auto* sub : {run, sweep, cex, oracle, mon}) add_common(sub);
  auto* grid_opt = sweep->add_option("--grid", flags.grid, "cells n:mu, comma separated");
  given.emplace_back(grid_opt, [&](Settings& t) { t.grid = flags.grid; });
  auto* samples_opt = oracle->add_option("--samples", flags.samples, "Monte Carlo samples per state");
  given.emplace_back(samples_opt, [&](Settings& t) { t.samples = flags.samples; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Settings s;
    if (!config_path.empty()) apply_config_file(config_path, s);
    for (auto& [o, copy] : given)
      if (o->count() > 0) copy(s);
    if (*run) return cmd_run(s);
    if (*sweep) return cmd_sweep(s);
    if (*cex) return cmd_counterexample(s);
    if (*oracle) return cmd_oracle_check(s);
    if (*mon) return cmd_monitors(s);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
