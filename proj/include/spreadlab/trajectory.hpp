#pragma once

// Run loop shared by both algorithms: stop rules, milestones, thinned
// profile samples and the observer hook used by monitors and probes.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spreadlab/core.hpp"
#include "spreadlab/events.hpp"
#include "spreadlab/spread.hpp"
#include "spreadlab/variation.hpp"

namespace spreadlab {

struct StopRule {
  bool at_optimal_spread = true;
  std::optional<std::uint64_t> max_evaluations;
  std::optional<std::uint64_t> max_iterations;
};

struct Milestone {
  std::uint64_t iteration = 0;
  std::uint64_t evaluations = 0;

  friend bool operator==(const Milestone&, const Milestone&) = default;
};

/// One row of the trajectory CSV. Gap statistics are -1 while the profile
/// is undefined.
struct ProfileSample {
  std::uint64_t iteration = 0;
  std::uint64_t evaluations = 0;
  std::int64_t min_gap = -1;
  std::int64_t min_count = -1;
  std::int64_t max_gap = -1;
  std::int64_t max_count = -1;
  std::int64_t min_f1 = 0;
  std::int64_t max_f1 = 0;
  std::int64_t distinct = 0;
  std::int64_t optimal = 0;
};

struct GapIndexCounts {
  std::uint64_t visits = 0;  // iterations spent at this index in a tracked state
  std::uint64_t down = 0;    // moves to index - 1
  std::uint64_t up = 0;      // moves to index + 1
};

/// Per-index move counts of the c+1 and c-1 gaps of a counterexample-shaped
/// population. Indices are 1-based interval positions.
struct DriftCounts {
  std::int64_t c = 0;
  std::vector<GapIndexCounts> plus;   // the c+1 gap
  std::vector<GapIndexCounts> minus;  // the c-1 gap
  std::uint64_t jumps = 0;            // shaped -> shaped with a non-unit index change
  std::uint64_t merges = 0;           // shaped -> the two special gaps averaged away
  std::uint64_t escapes = 0;          // shaped -> any other layout
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  std::uint64_t evaluations = 0;
  bool reached_optimal = false;
  std::optional<Milestone> distinct;
  std::optional<Milestone> extremes;
  std::optional<Milestone> min_gap_two;
  std::optional<Milestone> optimal;
  std::vector<ProfileSample> samples;
  std::optional<DriftCounts> drift;
  std::vector<MonitorReport> reports;
  std::vector<std::int64_t> final_values;  // ascending f1 values of the last population
};

struct StepContext {
  std::size_t n = 0;
  std::size_t mu = 0;
  std::span<const ObjectiveValue> prev;
  std::span<const ObjectiveValue> next;
  const IntervalProfile& prev_profile;
  const IntervalProfile& next_profile;
  const StepEvent& event;
};

class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void on_start(std::size_t /*n*/, std::span<const ObjectiveValue> /*initial*/,
                        const IntervalProfile& /*profile*/, TrajectoryRecord& /*record*/) {}
  virtual void on_step(const StepContext& ctx, TrajectoryRecord& record) = 0;
};

struct RunOptions {
  StopRule stop;
  /// Keep every k-th profile sample plus the last one; 0 keeps none.
  std::uint64_t sample_every = 1;
  std::span<StepObserver* const> observers;
};

ProfileSample make_sample(const IntervalProfile& profile, std::uint64_t iteration,
                          std::uint64_t evaluations, std::size_t n, std::size_t mu);

namespace detail {

/// Updates milestones for population P_t; returns true when P_t is an
/// optimal spread.
bool note_milestones(const IntervalProfile& profile, std::size_t n, std::size_t mu,
                     Milestone at, TrajectoryRecord& record);

}  // namespace detail

/// Iterates `step` until the stop rule fires. Counts mu initial evaluations
/// plus `offspring_per_step` per iteration.
template <class Genome, class StepFn>
TrajectoryRecord run_trajectory(std::size_t n, std::size_t offspring_per_step,
                                std::vector<Genome> population, const RunOptions& options,
                                RandomSource& rng, StepFn&& step) {
  const std::size_t mu = population.size();
  if (mu == 0) throw std::invalid_argument("run_trajectory: empty initial population");

  TrajectoryRecord record;
  record.seed = rng.seed();

  auto values = objective_values<Genome>(population);
  auto profile = interval_profile(values, static_cast<std::int64_t>(n), mu);
  std::uint64_t t = 0;
  std::uint64_t evals = mu;
  bool optimal = detail::note_milestones(profile, n, mu, {t, evals}, record);
  for (auto* obs : options.observers) obs->on_start(n, values, profile, record);
  std::uint64_t last_sampled = 0;
  if (options.sample_every > 0) record.samples.push_back(make_sample(profile, t, evals, n, mu));

  const auto& stop = options.stop;
  while (true) {
    if (stop.at_optimal_spread && optimal) break;
    if (stop.max_iterations && t >= *stop.max_iterations) break;
    if (stop.max_evaluations && evals + offspring_per_step > *stop.max_evaluations) break;

    StepResult<Genome> result = step(std::span<const Genome>(population), rng);
    result.event.iteration = t;
    auto next_values = objective_values<Genome>(result.next);
    auto next_profile = interval_profile(next_values, static_cast<std::int64_t>(n), mu);
    ++t;
    evals += offspring_per_step;

    if (!options.observers.empty()) {
      const StepContext ctx{n, mu, values, next_values, profile, next_profile, result.event};
      for (auto* obs : options.observers) obs->on_step(ctx, record);
    }
    optimal = detail::note_milestones(next_profile, n, mu, {t, evals}, record);
    if (options.sample_every > 0 && t % options.sample_every == 0) {
      record.samples.push_back(make_sample(next_profile, t, evals, n, mu));
      last_sampled = t;
    }

    population = std::move(result.next);
    values = std::move(next_values);
    profile = std::move(next_profile);
  }

  if (options.sample_every > 0 && last_sampled != t)
    record.samples.push_back(make_sample(profile, t, evals, n, mu));
  record.iterations = t;
  record.evaluations = evals;
  record.reached_optimal = optimal;
  record.final_values = profile.sorted_values;
  if (profile.status == ProfileStatus::Duplicates) {
    record.final_values.clear();
    for (const auto& v : values) record.final_values.push_back(v.f1);
    std::sort(record.final_values.begin(), record.final_values.end());
  }
  return record;
}

}  // namespace spreadlab
