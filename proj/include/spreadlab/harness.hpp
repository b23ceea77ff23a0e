#pragma once

// Experiment orchestration: configuration, counterexample construction,
// replicated runs, the gap-drift probe and scaling sweeps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "spreadlab/spea2.hpp"
#include "spreadlab/trajectory.hpp"
#include "spreadlab/variation.hpp"

namespace spreadlab {

enum class Algorithm { Spea2SteadyState, Spea2Generational, Nsga2Classic, Nsga2SteadyState };
enum class InitKind { Uniform, Counterexample, Explicit };
enum class Representation { OnesCount, Genome };

std::string_view to_string(Algorithm a) noexcept;
std::string_view to_string(InitKind k) noexcept;
std::string_view to_string(Representation r) noexcept;
std::string_view to_string(DistanceMetric m) noexcept;
Algorithm parse_algorithm(std::string_view text);
InitKind parse_init_kind(std::string_view text);
Representation parse_representation(std::string_view text);
DistanceMetric parse_metric(std::string_view text);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::Spea2SteadyState;
  std::size_t n = 0;
  std::size_t mu = 0;      // mu for SPEA2, N for NSGA-II
  std::size_t lambda = 1;  // SPEA2 offspring per iteration; NSGA-II derives its own
  MutationKind mutation = MutationKind::OneBit;
  DistanceMetric metric = DistanceMetric::EuclideanBiObjective;
  InitKind init = InitKind::Uniform;
  std::int64_t c = 0;                     // counterexample parameter
  std::vector<std::int64_t> init_values;  // explicit first-objective values
  StopRule stop;
  std::vector<std::uint64_t> seeds;
  bool monitors = false;
  bool drift_probe = false;
  std::uint64_t sample_every = 1;
  Representation representation = Representation::OnesCount;
};

/// Throws ConfigError describing the first problem found.
void validate(const ExperimentConfig& cfg);

nlohmann::json to_json(const ExperimentConfig& cfg);

/// First-objective values of the layout whose gaps are all c except the
/// (n'/8)-th, which is c+1, and the (n'/4)-th, which is c-1, for n' = n/c.
/// Requires c >= 2 and 16c | n.
std::vector<std::int64_t> build_counterexample(std::int64_t n, std::int64_t c);

/// Offspring evaluated per iteration.
std::size_t offspring_per_iteration(const ExperimentConfig& cfg) noexcept;

/// One replication on RandomSource(seed, 0).
TrajectoryRecord run_single(const ExperimentConfig& cfg, std::uint64_t seed);

/// One record per seed, in seed order. Replications run concurrently on
/// `threads` OpenMP threads (0 = runtime default).
std::vector<TrajectoryRecord> run_replications(const ExperimentConfig& cfg, int threads = 0);

/// Sequential reference for run_replications.
std::vector<TrajectoryRecord> run_replications_serial(const ExperimentConfig& cfg);

/// Tracks the c+1 and c-1 gaps of a counterexample-shaped population: all
/// gaps c except one c+1 and one c-1 gap that are not adjacent.
class DriftProbe final : public StepObserver {
 public:
  explicit DriftProbe(std::int64_t c);

  struct Layout {
    std::int64_t plus = 0;   // 1-based index of the c+1 gap
    std::int64_t minus = 0;  // 1-based index of the c-1 gap
  };
  /// Layout of a defined profile with exactly one c+1 and one c-1 gap and
  /// all others c; adjacency is allowed here.
  static std::optional<Layout> layout(const IntervalProfile& profile, std::int64_t c);

  void on_start(std::size_t n, std::span<const ObjectiveValue> initial,
                const IntervalProfile& profile, TrajectoryRecord& record) override;
  void on_step(const StepContext& ctx, TrajectoryRecord& record) override;

 private:
  std::int64_t c_;
};

/// Conditional drift E[dX | X moves] of the c+1 gap at index x, from the
/// move probabilities (n - c(x-1))/(2n) down and (cx+1)/(2n) up.
double proof_plus_gap_drift(std::int64_t n, std::int64_t c, std::int64_t x);
/// Conditional drift E[dY | Y moves] of the c-1 gap at index y, from the
/// move probabilities (n - cy)/(2n) up and (c(y-1)+1)/(2n) down.
double proof_minus_gap_drift(std::int64_t n, std::int64_t c, std::int64_t y);

struct IndexDrift {
  std::int64_t index = 0;
  std::uint64_t visits = 0;
  std::uint64_t down = 0;
  std::uint64_t up = 0;
  double mean = 0.0;    // empirical E[d index | moved]; NaN without samples
  double theory = 0.0;  // proof-probability value at this index
};

struct WindowDrift {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::uint64_t samples = 0;
  std::uint64_t visits = 0;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool low_confidence = true;
  double down_per_iteration = 0.0;
  double up_per_iteration = 0.0;
  double theory_max = 0.0;  // largest proof value inside the window
  double theory_min = 0.0;
};

struct DriftEstimate {
  std::int64_t n = 0;
  std::int64_t c = 0;
  WindowDrift plus;   // window [n'/16, 3n'/16]
  WindowDrift minus;  // window [3n'/16, 5n'/16]
  std::vector<IndexDrift> plus_by_index;
  std::vector<IndexDrift> minus_by_index;
  std::uint64_t jumps = 0;
  std::uint64_t merges = 0;
  std::uint64_t escapes = 0;
};

inline constexpr std::uint64_t kMinConfidentSamples = 100;

/// Pools the drift counts of records produced with the probe enabled.
DriftEstimate estimate_drift(std::span<const TrajectoryRecord> records, std::int64_t n,
                             std::int64_t c);

nlohmann::json to_json(const DriftEstimate& d);

struct SweepCell {
  std::size_t n = 0;
  std::size_t mu = 0;
  std::size_t runs = 0;
  std::size_t reached = 0;
  double mean_optimal = 0.0;
  double median_optimal = 0.0;
  double mean_extremes = 0.0;
  double median_extremes = 0.0;
  double mean_distinct = 0.0;
  double median_distinct = 0.0;
  double envelope_optimal = 0.0;   // mu^2 n ln(mu) ln(n)
  double envelope_extremes = 0.0;  // n ln(n)
  double ratio_optimal = 0.0;      // mean_optimal / envelope_optimal
  double ratio_extremes = 0.0;
};

/// Runs `base` for every (n, mu) cell of the grid with its own seeds.
/// Statistics are over evaluations; unreached milestones are excluded.
std::vector<SweepCell> scaling_sweep(std::span<const std::pair<std::size_t, std::size_t>> grid,
                                     const ExperimentConfig& base, int threads = 0);

/// Least-squares slope of log(ys) against log(xs).
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

double optimal_spread_envelope(double n, double mu);

}  // namespace spreadlab
