#pragma once

// Interval-profile metrics on the first objective and the optimal-spread
// target.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spreadlab/core.hpp"

namespace spreadlab {

enum class ProfileStatus { Defined, Duplicates, MissingExtremes };

/// Gap structure of a population's ascending first-objective values.
/// Gap statistics are only meaningful when status == Defined.
struct IntervalProfile {
  ProfileStatus status = ProfileStatus::MissingExtremes;
  std::vector<std::int64_t> sorted_values;  // ascending distinct f1 values
  std::vector<std::int64_t> gaps;           // gaps[i] = sorted_values[i+1] - sorted_values[i]
  std::int64_t min_gap = 0;                 // X
  std::int64_t max_gap = 0;                 // Y
  std::size_t min_count = 0;                // N_min
  std::size_t max_count = 0;                // M_max

  bool defined() const noexcept { return status == ProfileStatus::Defined; }
};

struct AlphaBeta {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
};

/// Requires |population| == mu; throws std::invalid_argument otherwise.
IntervalProfile interval_profile(std::span<const ObjectiveValue> population, std::int64_t n,
                                 std::size_t mu);

/// Unique (alpha, beta) with alpha = floor(n/(mu-1)) and
/// alpha*beta + (alpha+1)*(mu-1-beta) = n. Requires 2 <= mu <= n + 1.
AlphaBeta alpha_beta(std::int64_t n, std::int64_t mu);

bool is_optimal_spread(const IntervalProfile& profile, std::int64_t n, std::size_t mu);
bool is_optimal_spread(std::span<const ObjectiveValue> population, std::int64_t n,
                       std::size_t mu);

using LexKey = std::pair<std::int64_t, std::int64_t>;

/// (-X, N_min). Throws std::logic_error on an undefined profile.
LexKey lex_key_min(const IntervalProfile& profile);
/// (Y, M_max). Throws std::logic_error on an undefined profile.
LexKey lex_key_max(const IntervalProfile& profile);

}  // namespace spreadlab
