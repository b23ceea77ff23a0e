#pragma once

// NSGA-II survival: non-dominated sorting, crowding distance with a stable
// sort, and removal from the critical front without recomputation.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "spreadlab/core.hpp"
#include "spreadlab/events.hpp"
#include "spreadlab/spea2.hpp"
#include "spreadlab/trajectory.hpp"
#include "spreadlab/variation.hpp"

namespace spreadlab {

struct FrontPartition {
  std::vector<std::vector<std::size_t>> fronts;  // ascending indices per front
  std::size_t critical = 0;                      // 0-based index of the critical front
};

/// Peels non-dominated layers of R. The critical front is the first one at
/// which the cumulative size reaches `target`.
FrontPartition nondominated_sort(std::span<const ObjectiveValue> values, std::size_t target);

/// Crowding distances of one front, kept exact. Finite totals share the
/// denominator `scale`: total(i) = numerator[i] / scale.
struct CrowdingAssignment {
  std::vector<bool> infinite;
  std::vector<std::int64_t> numerator;
  std::int64_t scale = 1;
  std::array<std::vector<std::size_t>, 2> order;  // stable ascending sort per objective

  std::size_t size() const noexcept { return infinite.size(); }
  double value(std::size_t i) const noexcept;
  /// Strict "less crowded value" comparison, exact.
  bool less(std::size_t a, std::size_t b) const noexcept;
  bool equal(std::size_t a, std::size_t b) const noexcept;
};

/// Members are taken in the given order, which is the base order of the
/// stable sorts. An objective whose values all coincide contributes 0.
CrowdingAssignment crowding_distance(std::span<const ObjectiveValue> front);

/// Keeps the fronts up to the critical one and removes members of the
/// critical front by a single crowding assignment, minimum first, ties
/// uniform, until `target` remain. Removal order lists crowding removals
/// first, then the discarded later fronts.
Selection classic_survival(std::span<const ObjectiveValue> combined, std::size_t target,
                           RandomSource& rng);

enum class Nsga2Variant { Classic, SteadyState };

struct Nsga2Config {
  std::size_t population = 2;  // N
  Nsga2Variant variant = Nsga2Variant::SteadyState;
  MutationKind mutation = MutationKind::OneBit;

  std::size_t offspring() const noexcept {
    return variant == Nsga2Variant::SteadyState ? 1 : population;
  }
};

template <class Genome>
StepResult<Genome> nsga2_iteration(std::span<const Genome> parents, const Nsga2Config& cfg,
                                   RandomSource& rng) {
  if (parents.size() != cfg.population)
    throw std::invalid_argument("nsga2_iteration: population size differs from N");
  StepResult<Genome> out;
  const std::size_t lambda = cfg.offspring();
  std::vector<Genome> combined(parents.begin(), parents.end());
  combined.reserve(parents.size() + lambda);
  for (std::size_t i = 0; i < lambda; ++i) {
    const std::size_t p = rng.uniform_index(parents.size());
    out.event.parents.push_back(p);
    combined.push_back(mutate(parents[p], cfg.mutation, rng));
    out.event.offspring.push_back(evaluate_omm(combined.back()));
  }
  const auto values = objective_values<Genome>(combined);
  Selection sel = classic_survival(values, cfg.population, rng);
  out.next.reserve(cfg.population);
  for (auto i : sel.kept) out.next.push_back(std::move(combined[i]));
  out.event.removed = std::move(sel.removed);
  return out;
}

/// One offspring, one removal by freshly computed crowding distance.
template <class Genome>
StepResult<Genome> steady_state_nsga2_iteration(std::span<const Genome> parents,
                                                MutationKind mutation, RandomSource& rng) {
  return nsga2_iteration(parents, Nsga2Config{parents.size(), Nsga2Variant::SteadyState, mutation},
                         rng);
}

template <class Genome>
TrajectoryRecord run_nsga2(const Nsga2Config& cfg, std::size_t n, std::vector<Genome> init,
                           const RunOptions& options, RandomSource& rng) {
  if (init.size() != cfg.population)
    throw std::invalid_argument("run_nsga2: initial population size differs from N");
  return run_trajectory<Genome>(
      n, cfg.offspring(), std::move(init), options, rng,
      [&cfg](std::span<const Genome> p, RandomSource& r) { return nsga2_iteration(p, cfg, r); });
}

}  // namespace spreadlab
