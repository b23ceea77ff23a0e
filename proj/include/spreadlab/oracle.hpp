#pragma once

// Exact one-step successor distributions of the steady-state algorithms
// with 1-bit mutation on OneMinMax, and the Monte Carlo comparison against
// the simulated algorithms.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "spreadlab/harness.hpp"
#include "spreadlab/variation.hpp"

namespace spreadlab {

/// Ascending first-objective values of a population.
using ValueMultiset = std::vector<std::int64_t>;
using SuccessorDistribution = std::map<ValueMultiset, double>;

enum class SteadyStateAlgorithm { Spea2, Nsga2 };

inline constexpr std::int64_t kOracleMaxN = 8;
inline constexpr std::size_t kOracleMaxPopulation = 4;

/// Enumerates parent choice, flip position and every tie-break branch of
/// the removal rule. Removal is evaluated with its own integer arithmetic,
/// independent of the simulation kernels. Throws std::invalid_argument when
/// n > 8, the population exceeds 4 members, or a value lies outside [0, n].
SuccessorDistribution exact_transition_oracle(const ValueMultiset& state,
                                              SteadyStateAlgorithm algorithm, std::int64_t n);

/// Empirical successor distribution from `samples` single steps of the
/// simulated algorithm, each started from `state` in ascending order.
SuccessorDistribution sample_successors(const ValueMultiset& state, SteadyStateAlgorithm algorithm,
                                        std::int64_t n, std::size_t samples, RandomSource& rng,
                                        Representation representation = Representation::OnesCount);

double total_variation(const SuccessorDistribution& a, const SuccessorDistribution& b);

/// Every multiset of `size` values from [0, n], ascending, in lexicographic order.
std::vector<ValueMultiset> enumerate_states(std::int64_t n, std::size_t size);

struct OracleCheckRow {
  ValueMultiset state;
  double tv = 0.0;
};

/// Compares Monte Carlo against the oracle on every state of size mu over
/// [0, n]. State i samples from RandomSource(seed, i), so the result does
/// not depend on the thread count.
std::vector<OracleCheckRow> oracle_sweep(std::int64_t n, std::size_t mu,
                                         SteadyStateAlgorithm algorithm, std::size_t samples,
                                         std::uint64_t seed, int threads = 0,
                                         Representation representation = Representation::OnesCount);

}  // namespace spreadlab
