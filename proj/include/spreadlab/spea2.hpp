#pragma once

// SPEA2 environmental selection and the algorithm loop.
//
// Removal walks the lexicographic order of sigma-distance vectors, breaking
// ties uniformly and recomputing all vectors after every removal. When the
// non-dominated members do not fill the population, the remainder is
// chosen by the strength-based indicator.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "spreadlab/core.hpp"
#include "spreadlab/events.hpp"
#include "spreadlab/trajectory.hpp"
#include "spreadlab/variation.hpp"

namespace spreadlab {

enum class DistanceMetric { EuclideanBiObjective, FirstObjectiveAbsolute };

double objective_distance(const ObjectiveValue& u, const ObjectiveValue& v,
                          DistanceMetric metric) noexcept;

/// Ascending distances from one member to every other member.
using SigmaVector = std::vector<double>;

/// Throws std::invalid_argument when |values| < 2 or member is out of range.
SigmaVector sigma_vector(std::size_t member, std::span<const ObjectiveValue> values,
                         DistanceMetric metric);

/// Members of `alive` (indices into `values`) whose sigma vector, taken over
/// the alive members only, is lexicographically minimal. Builds and sorts
/// every vector.
std::vector<std::size_t> sigma_minimizers_reference(std::span<const ObjectiveValue> values,
                                                    std::span<const std::size_t> alive,
                                                    DistanceMetric metric);

/// Same set as sigma_minimizers_reference. Filters on the nearest-neighbour
/// distance first and builds full vectors only for members tied there.
std::vector<std::size_t> sigma_minimizers(std::span<const ObjectiveValue> values,
                                          std::span<const std::size_t> alive,
                                          DistanceMetric metric);

struct Selection {
  std::vector<std::size_t> kept;     // ascending indices
  std::vector<std::size_t> removed;  // removal order
};

/// Removes lexicographically minimal members one at a time until mu remain.
/// Requires |values| > mu and every member non-dominated.
Selection truncate_by_sigma(std::span<const ObjectiveValue> values, std::size_t mu,
                            DistanceMetric metric, RandomSource& rng);

/// R(x) for every pool member: the sum of S(y) over the strict dominators y
/// of x, with S(y) the number of kept-or-pool members y weakly dominates.
std::vector<std::int64_t> strength_indicator(std::span<const ObjectiveValue> kept,
                                             std::span<const ObjectiveValue> pool);

/// Pool indices added, in order of ascending indicator (ties uniform),
/// until kept reaches mu. Requires |kept| < mu <= |kept| + |pool|.
std::vector<std::size_t> strength_fill(std::span<const ObjectiveValue> kept,
                                       std::span<const ObjectiveValue> pool, std::size_t mu,
                                       RandomSource& rng);

struct Spea2Config {
  std::size_t mu = 2;
  std::size_t lambda = 1;
  MutationKind mutation = MutationKind::OneBit;
  DistanceMetric metric = DistanceMetric::EuclideanBiObjective;

  bool steady_state() const noexcept { return lambda == 1; }
};

namespace detail {
Selection truncate_by_sigma_unchecked(std::span<const ObjectiveValue> values, std::size_t mu,
                                      DistanceMetric metric, RandomSource& rng);
/// Survivor selection on R = P_t ++ Q_t; returns kept (ascending) and removed.
Selection spea2_select(std::span<const ObjectiveValue> combined, const Spea2Config& cfg,
                       RandomSource& rng);
}  // namespace detail

template <class Genome>
StepResult<Genome> spea2_iteration(std::span<const Genome> parents, const Spea2Config& cfg,
                                   RandomSource& rng) {
  if (parents.size() != cfg.mu)
    throw std::invalid_argument("spea2_iteration: population size differs from mu");
  StepResult<Genome> out;
  std::vector<Genome> combined(parents.begin(), parents.end());
  combined.reserve(cfg.mu + cfg.lambda);
  out.event.parents.reserve(cfg.lambda);
  for (std::size_t i = 0; i < cfg.lambda; ++i) {
    const std::size_t p = rng.uniform_index(cfg.mu);
    out.event.parents.push_back(p);
    combined.push_back(mutate(parents[p], cfg.mutation, rng));
    out.event.offspring.push_back(evaluate_omm(combined.back()));
  }
  const auto values = objective_values<Genome>(combined);
  Selection sel = detail::spea2_select(values, cfg, rng);
  out.next.reserve(cfg.mu);
  for (auto i : sel.kept) out.next.push_back(std::move(combined[i]));
  out.event.removed = std::move(sel.removed);
  return out;
}

template <class Genome>
TrajectoryRecord run_spea2(const Spea2Config& cfg, std::size_t n, std::vector<Genome> init,
                           const RunOptions& options, RandomSource& rng) {
  if (init.size() != cfg.mu)
    throw std::invalid_argument("run_spea2: initial population size differs from mu");
  return run_trajectory<Genome>(
      n, cfg.lambda, std::move(init), options, rng,
      [&cfg](std::span<const Genome> p, RandomSource& r) { return spea2_iteration(p, cfg, r); });
}

}  // namespace spreadlab
