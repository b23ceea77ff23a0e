#include "spreadlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include <omp.h>

#include "spreadlab/invariants.hpp"
#include "spreadlab/nsga2.hpp"

namespace spreadlab {

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Spea2SteadyState: return "spea2-ss";
    case Algorithm::Spea2Generational: return "spea2-gen";
    case Algorithm::Nsga2Classic: return "nsga2-classic";
    case Algorithm::Nsga2SteadyState: return "nsga2-ss";
  }
  return "?";
}

std::string_view to_string(InitKind k) noexcept {
  switch (k) {
    case InitKind::Uniform: return "uniform";
    case InitKind::Counterexample: return "counterexample";
    case InitKind::Explicit: return "values";
  }
  return "?";
}

std::string_view to_string(Representation r) noexcept {
  return r == Representation::OnesCount ? "ones-count" : "genome";
}

std::string_view to_string(DistanceMetric m) noexcept {
  return m == DistanceMetric::EuclideanBiObjective ? "euclidean" : "first-objective";
}

Algorithm parse_algorithm(std::string_view text) {
  for (auto a : {Algorithm::Spea2SteadyState, Algorithm::Spea2Generational,
                 Algorithm::Nsga2Classic, Algorithm::Nsga2SteadyState})
    if (to_string(a) == text) return a;
  throw ConfigError("unknown algorithm: " + std::string(text));
}

InitKind parse_init_kind(std::string_view text) {
  for (auto k : {InitKind::Uniform, InitKind::Counterexample, InitKind::Explicit})
    if (to_string(k) == text) return k;
  throw ConfigError("unknown init kind: " + std::string(text));
}

Representation parse_representation(std::string_view text) {
  for (auto r : {Representation::OnesCount, Representation::Genome})
    if (to_string(r) == text) return r;
  throw ConfigError("unknown representation: " + std::string(text));
}

DistanceMetric parse_metric(std::string_view text) {
  for (auto m : {DistanceMetric::EuclideanBiObjective, DistanceMetric::FirstObjectiveAbsolute})
    if (to_string(m) == text) return m;
  throw ConfigError("unknown metric: " + std::string(text));
}

namespace {

bool is_spea2(Algorithm a) {
  return a == Algorithm::Spea2SteadyState || a == Algorithm::Spea2Generational;
}

bool is_steady_state(const ExperimentConfig& cfg) { return offspring_per_iteration(cfg) == 1; }

void check_counterexample_args(std::int64_t n, std::int64_t c) {
  if (c < 2) throw ConfigError("counterexample requires c >= 2");
  if (n <= 0 || n % (16 * c) != 0) throw ConfigError("counterexample requires 16c to divide n");
}

}  // namespace

std::size_t offspring_per_iteration(const ExperimentConfig& cfg) noexcept {
  switch (cfg.algorithm) {
    case Algorithm::Spea2SteadyState: return 1;
    case Algorithm::Spea2Generational: return cfg.lambda;
    case Algorithm::Nsga2Classic: return cfg.mu;
    case Algorithm::Nsga2SteadyState: return 1;
  }
  return 1;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n == 0) throw ConfigError("n must be at least 1");
  if (cfg.mu == 0) throw ConfigError("mu must be at least 1");
  if (cfg.lambda == 0) throw ConfigError("lambda must be at least 1");
  if (cfg.algorithm == Algorithm::Spea2SteadyState && cfg.lambda != 1)
    throw ConfigError("spea2-ss requires lambda = 1");
  const auto n = static_cast<std::int64_t>(cfg.n);
  switch (cfg.init) {
    case InitKind::Uniform: break;
    case InitKind::Counterexample:
      check_counterexample_args(n, cfg.c);
      if (static_cast<std::int64_t>(cfg.mu) != n / cfg.c + 1)
        throw ConfigError("counterexample requires mu = n/c + 1");
      break;
    case InitKind::Explicit:
      if (cfg.init_values.size() != cfg.mu)
        throw ConfigError("explicit initial values must list exactly mu values");
      for (auto v : cfg.init_values)
        if (v < 0 || v > n) throw ConfigError("explicit initial values must lie in [0, n]");
      break;
  }
  if (!cfg.stop.max_evaluations && !cfg.stop.max_iterations)
    throw ConfigError("a run needs an evaluation or iteration budget");
  if (cfg.drift_probe && cfg.init != InitKind::Counterexample)
    throw ConfigError("the drift probe requires the counterexample initialization");
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["algorithm"] = to_string(cfg.algorithm);
  j["n"] = cfg.n;
  j["mu"] = cfg.mu;
  j["lambda"] = offspring_per_iteration(cfg);
  j["mutation"] = to_string(cfg.mutation);
  j["metric"] = to_string(cfg.metric);
  j["init"] = to_string(cfg.init);
  if (cfg.init == InitKind::Counterexample) j["c"] = cfg.c;
  if (cfg.init == InitKind::Explicit) j["init_values"] = cfg.init_values;
  j["stop"] = {{"at_optimal_spread", cfg.stop.at_optimal_spread},
               {"max_evaluations", cfg.stop.max_evaluations
                                       ? nlohmann::json(*cfg.stop.max_evaluations)
                                       : nlohmann::json(nullptr)},
               {"max_iterations", cfg.stop.max_iterations
                                      ? nlohmann::json(*cfg.stop.max_iterations)
                                      : nlohmann::json(nullptr)}};
  j["seeds"] = cfg.seeds;
  j["monitors"] = cfg.monitors;
  j["drift_probe"] = cfg.drift_probe;
  j["sample_every"] = cfg.sample_every;
  j["representation"] = to_string(cfg.representation);
  return j;
}

std::vector<std::int64_t> build_counterexample(std::int64_t n, std::int64_t c) {
  check_counterexample_args(n, c);
  const std::int64_t np = n / c;
  std::vector<std::int64_t> values{0};
  values.reserve(static_cast<std::size_t>(np + 1));
  for (std::int64_t i = 1; i <= np; ++i) {
    std::int64_t gap = c;
    if (i == np / 8) gap = c + 1;
    if (i == np / 4) gap = c - 1;
    values.push_back(values.back() + gap);
  }
  return values;
}

namespace {

template <class Genome>
std::vector<Genome> initial_population(const ExperimentConfig& cfg, RandomSource& rng) {
  switch (cfg.init) {
    case InitKind::Uniform: {
      std::vector<Genome> pop;
      pop.reserve(cfg.mu);
      for (std::size_t i = 0; i < cfg.mu; ++i) pop.push_back(random_genome<Genome>(cfg.n, rng));
      return pop;
    }
    case InitKind::Counterexample: {
      const auto values = build_counterexample(static_cast<std::int64_t>(cfg.n), cfg.c);
      return population_from_values<Genome>(values, cfg.n);
    }
    case InitKind::Explicit:
      return population_from_values<Genome>(cfg.init_values, cfg.n);
  }
  return {};
}

template <class Genome>
TrajectoryRecord run_with(const ExperimentConfig& cfg, std::uint64_t seed) {
  RandomSource rng(seed, 0);
  auto init = initial_population<Genome>(cfg, rng);

  std::vector<StepObserver*> observers;
  std::optional<MonitorSuite> monitors;
  std::optional<DriftProbe> probe;
  if (cfg.monitors) {
    monitors.emplace(is_spea2(cfg.algorithm) ? MonitoredAlgorithm::Spea2 : MonitoredAlgorithm::Nsga2,
                     is_steady_state(cfg), cfg.mutation);
    observers.push_back(&*monitors);
  }
  if (cfg.drift_probe) {
    probe.emplace(cfg.c);
    observers.push_back(&*probe);
  }
  RunOptions options;
  options.stop = cfg.stop;
  options.sample_every = cfg.sample_every;
  options.observers = observers;

  TrajectoryRecord record;
  if (is_spea2(cfg.algorithm)) {
    const Spea2Config sc{cfg.mu, offspring_per_iteration(cfg), cfg.mutation, cfg.metric};
    record = run_spea2<Genome>(sc, cfg.n, std::move(init), options, rng);
  } else {
    const Nsga2Config nc{cfg.mu,
                         cfg.algorithm == Algorithm::Nsga2Classic ? Nsga2Variant::Classic
                                                                  : Nsga2Variant::SteadyState,
                         cfg.mutation};
    record = run_nsga2<Genome>(nc, cfg.n, std::move(init), options, rng);
  }
  record.seed = seed;
  return record;
}

}  // namespace

TrajectoryRecord run_single(const ExperimentConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  return cfg.representation == Representation::Genome ? run_with<Individual>(cfg, seed)
                                                      : run_with<OnesCount>(cfg, seed);
}

std::vector<TrajectoryRecord> run_replications(const ExperimentConfig& cfg, int threads) {
  validate(cfg);
  const auto count = static_cast<std::int64_t>(cfg.seeds.size());
  std::vector<TrajectoryRecord> out(cfg.seeds.size());
  std::exception_ptr failure;
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = run_single(cfg, cfg.seeds[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(spreadlab_replication_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<TrajectoryRecord> run_replications_serial(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<TrajectoryRecord> out;
  out.reserve(cfg.seeds.size());
  for (auto seed : cfg.seeds) out.push_back(run_single(cfg, seed));
  return out;
}

// --- drift probe -------------------------------------------------------------

DriftProbe::DriftProbe(std::int64_t c) : c_(c) {
  if (c < 2) throw ConfigError("drift probe requires c >= 2");
}

std::optional<DriftProbe::Layout> DriftProbe::layout(const IntervalProfile& profile,
                                                     std::int64_t c) {
  if (!profile.defined()) return std::nullopt;
  Layout at;
  for (std::size_t i = 0; i < profile.gaps.size(); ++i) {
    const std::int64_t g = profile.gaps[i];
    const auto index = static_cast<std::int64_t>(i) + 1;
    if (g == c) continue;
    if (g == c + 1 && at.plus == 0) {
      at.plus = index;
    } else if (g == c - 1 && at.minus == 0) {
      at.minus = index;
    } else {
      return std::nullopt;
    }
  }
  if (at.plus == 0 || at.minus == 0) return std::nullopt;
  return at;
}

void DriftProbe::on_start(std::size_t, std::span<const ObjectiveValue> initial,
                          const IntervalProfile&, TrajectoryRecord& record) {
  DriftCounts counts;
  counts.c = c_;
  counts.plus.resize(initial.size());
  counts.minus.resize(initial.size());
  record.drift = std::move(counts);
}

void DriftProbe::on_step(const StepContext& ctx, TrajectoryRecord& record) {
  auto& counts = *record.drift;
  const auto before = layout(ctx.prev_profile, c_);
  if (!before || std::abs(before->plus - before->minus) <= 1) return;
  auto& plus = counts.plus[static_cast<std::size_t>(before->plus)];
  auto& minus = counts.minus[static_cast<std::size_t>(before->minus)];
  ++plus.visits;
  ++minus.visits;

  const auto after = layout(ctx.next_profile, c_);
  if (!after) {
    const auto& p = ctx.next_profile;
    const bool merged = p.defined() && p.min_gap == c_ && p.max_gap == c_;
    ++(merged ? counts.merges : counts.escapes);
    return;
  }
  const std::int64_t dx = after->plus - before->plus;
  const std::int64_t dy = after->minus - before->minus;
  if (dx == 0 && dy == 0) return;
  if (dy == 0 && (dx == 1 || dx == -1)) {
    ++(dx < 0 ? plus.down : plus.up);
  } else if (dx == 0 && (dy == 1 || dy == -1)) {
    ++(dy < 0 ? minus.down : minus.up);
  } else {
    ++counts.jumps;
  }
}

double proof_plus_gap_drift(std::int64_t n, std::int64_t c, std::int64_t x) {
  const auto down = static_cast<double>(n - c * (x - 1));
  const auto up = static_cast<double>(c * x + 1);
  return (up - down) / (up + down);
}

double proof_minus_gap_drift(std::int64_t n, std::int64_t c, std::int64_t y) {
  const auto up = static_cast<double>(n - c * y);
  const auto down = static_cast<double>(c * (y - 1) + 1);
  return (up - down) / (up + down);
}

namespace {

std::vector<IndexDrift> pool_indices(std::span<const TrajectoryRecord> records, bool plus_gap,
                                     std::int64_t n, std::int64_t c) {
  std::vector<IndexDrift> out;
  for (const auto& r : records) {
    if (!r.drift) continue;
    const auto& counts = plus_gap ? r.drift->plus : r.drift->minus;
    if (out.size() < counts.size()) out.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      out[i].visits += counts[i].visits;
      out[i].down += counts[i].down;
      out[i].up += counts[i].up;
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& d = out[i];
    d.index = static_cast<std::int64_t>(i);
    const auto moves = d.down + d.up;
    d.mean = moves == 0 ? std::numeric_limits<double>::quiet_NaN()
                        : (static_cast<double>(d.up) - static_cast<double>(d.down)) /
                              static_cast<double>(moves);
    d.theory = plus_gap ? proof_plus_gap_drift(n, c, d.index) : proof_minus_gap_drift(n, c, d.index);
  }
  return out;
}

WindowDrift pool_window(std::span<const IndexDrift> by_index, std::int64_t lo, std::int64_t hi) {
  WindowDrift w;
  w.lo = lo;
  w.hi = hi;
  std::uint64_t down = 0, up = 0;
  w.theory_max = -std::numeric_limits<double>::infinity();
  w.theory_min = std::numeric_limits<double>::infinity();
  for (const auto& d : by_index) {
    if (d.index < lo || d.index > hi) continue;
    down += d.down;
    up += d.up;
    w.visits += d.visits;
    w.theory_max = std::max(w.theory_max, d.theory);
    w.theory_min = std::min(w.theory_min, d.theory);
  }
  w.samples = down + up;
  w.low_confidence = w.samples < kMinConfidentSamples;
  if (w.samples > 0) {
    const double k = static_cast<double>(w.samples);
    w.mean = (static_cast<double>(up) - static_cast<double>(down)) / k;
    // Each sample is +-1, so the sample variance is 1 - mean^2 (Bessel-corrected).
    const double var = w.samples > 1 ? (1.0 - w.mean * w.mean) * k / (k - 1.0) : 0.0;
    const double half = 1.96 * std::sqrt(var / k);
    w.ci_low = w.mean - half;
    w.ci_high = w.mean + half;
  } else {
    w.mean = std::numeric_limits<double>::quiet_NaN();
    w.ci_low = w.ci_high = w.mean;
  }
  if (w.visits > 0) {
    w.down_per_iteration = static_cast<double>(down) / static_cast<double>(w.visits);
    w.up_per_iteration = static_cast<double>(up) / static_cast<double>(w.visits);
  }
  return w;
}

}  // namespace

DriftEstimate estimate_drift(std::span<const TrajectoryRecord> records, std::int64_t n,
                             std::int64_t c) {
  check_counterexample_args(n, c);
  DriftEstimate e;
  e.n = n;
  e.c = c;
  e.plus_by_index = pool_indices(records, true, n, c);
  e.minus_by_index = pool_indices(records, false, n, c);
  const std::int64_t np = n / c;
  e.plus = pool_window(e.plus_by_index, np / 16, 3 * np / 16);
  e.minus = pool_window(e.minus_by_index, 3 * np / 16, 5 * np / 16);
  for (const auto& r : records) {
    if (!r.drift) continue;
    e.jumps += r.drift->jumps;
    e.merges += r.drift->merges;
    e.escapes += r.drift->escapes;
  }
  return e;
}

namespace {

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json window_json(const WindowDrift& w) {
  return {{"window", {w.lo, w.hi}},
          {"samples", w.samples},
          {"visits", w.visits},
          {"mean", finite_or_null(w.mean)},
          {"ci95", {finite_or_null(w.ci_low), finite_or_null(w.ci_high)}},
          {"low_confidence", w.low_confidence},
          {"down_per_iteration", w.down_per_iteration},
          {"up_per_iteration", w.up_per_iteration},
          {"theory_range", {finite_or_null(w.theory_min), finite_or_null(w.theory_max)}}};
}

nlohmann::json index_json(std::span<const IndexDrift> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& d : rows) {
    if (d.visits == 0) continue;
    out.push_back({{"index", d.index},
                   {"visits", d.visits},
                   {"down", d.down},
                   {"up", d.up},
                   {"mean", finite_or_null(d.mean)},
                   {"theory", d.theory}});
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const DriftEstimate& d) {
  return {{"n", d.n},
          {"c", d.c},
          {"plus_gap", window_json(d.plus)},
          {"minus_gap", window_json(d.minus)},
          {"plus_gap_by_index", index_json(d.plus_by_index)},
          {"minus_gap_by_index", index_json(d.minus_by_index)},
          {"jumps", d.jumps},
          {"merges", d.merges},
          {"escapes", d.escapes}};
}

// --- scaling sweep -----------------------------------------------------------

double optimal_spread_envelope(double n, double mu) {
  return mu * mu * n * std::log(mu) * std::log(n);
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("loglog_slope: needs two or more matching points");
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

namespace {

std::pair<double, double> mean_median(std::vector<double> v) {
  if (v.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  const double median = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  return {mean, median};
}

}  // namespace

std::vector<SweepCell> scaling_sweep(std::span<const std::pair<std::size_t, std::size_t>> grid,
                                     const ExperimentConfig& base, int threads) {
  std::vector<SweepCell> table;
  for (const auto& [n, mu] : grid) {
    ExperimentConfig cfg = base;
    cfg.n = n;
    cfg.mu = mu;
    const auto records = run_replications(cfg, threads);
    std::vector<double> opt, ext, dis;
    SweepCell cell;
    cell.n = n;
    cell.mu = mu;
    cell.runs = records.size();
    for (const auto& r : records) {
      if (r.optimal) opt.push_back(static_cast<double>(r.optimal->evaluations));
      if (r.extremes) ext.push_back(static_cast<double>(r.extremes->evaluations));
      if (r.distinct) dis.push_back(static_cast<double>(r.distinct->evaluations));
    }
    cell.reached = opt.size();
    std::tie(cell.mean_optimal, cell.median_optimal) = mean_median(opt);
    std::tie(cell.mean_extremes, cell.median_extremes) = mean_median(ext);
    std::tie(cell.mean_distinct, cell.median_distinct) = mean_median(dis);
    const auto dn = static_cast<double>(n), dmu = static_cast<double>(mu);
    cell.envelope_optimal = optimal_spread_envelope(dn, dmu);
    cell.envelope_extremes = dn * std::log(dn);
    cell.ratio_optimal = cell.mean_optimal / cell.envelope_optimal;
    cell.ratio_extremes = cell.mean_extremes / cell.envelope_extremes;
    table.push_back(cell);
  }
  return table;
}

}  // namespace spreadlab
