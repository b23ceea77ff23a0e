#include "spreadlab/spread.hpp"

#include <algorithm>
#include <stdexcept>

namespace spreadlab {

IntervalProfile interval_profile(std::span<const ObjectiveValue> population, std::int64_t n,
                                 std::size_t mu) {
  if (population.size() != mu)
    throw std::invalid_argument("interval_profile: population size differs from mu");

  IntervalProfile p;
  std::vector<std::int64_t> values;
  values.reserve(population.size());
  for (const auto& v : population) values.push_back(v.f1);
  std::sort(values.begin(), values.end());
  const bool has_duplicates = std::adjacent_find(values.begin(), values.end()) != values.end();
  values.erase(std::unique(values.begin(), values.end()), values.end());
  p.sorted_values = std::move(values);

  if (has_duplicates) {
    p.status = ProfileStatus::Duplicates;
    return p;
  }
  if (p.sorted_values.size() < 2 || p.sorted_values.front() != 0 || p.sorted_values.back() != n) {
    p.status = ProfileStatus::MissingExtremes;
    return p;
  }

  p.status = ProfileStatus::Defined;
  p.gaps.reserve(p.sorted_values.size() - 1);
  for (std::size_t i = 0; i + 1 < p.sorted_values.size(); ++i)
    p.gaps.push_back(p.sorted_values[i + 1] - p.sorted_values[i]);
  const auto [lo, hi] = std::minmax_element(p.gaps.begin(), p.gaps.end());
  p.min_gap = *lo;
  p.max_gap = *hi;
  p.min_count = static_cast<std::size_t>(std::count(p.gaps.begin(), p.gaps.end(), p.min_gap));
  p.max_count = static_cast<std::size_t>(std::count(p.gaps.begin(), p.gaps.end(), p.max_gap));
  return p;
}

AlphaBeta alpha_beta(std::int64_t n, std::int64_t mu) {
  if (mu < 2 || mu > n + 1) throw std::invalid_argument("alpha_beta: requires 2 <= mu <= n + 1");
  const std::int64_t gaps = mu - 1;
  const std::int64_t alpha = n / gaps;
  // alpha*beta + (alpha+1)*(gaps-beta) = n  =>  beta = (alpha+1)*gaps - n
  return {alpha, (alpha + 1) * gaps - n};
}

bool is_optimal_spread(const IntervalProfile& profile, std::int64_t n, std::size_t mu) {
  if (!profile.defined() || mu < 2) return false;
  const auto gaps = static_cast<std::int64_t>(mu - 1);
  const std::int64_t lo = n / gaps;
  const std::int64_t hi = (n + gaps - 1) / gaps;
  return profile.min_gap >= lo && profile.max_gap <= hi;
}

bool is_optimal_spread(std::span<const ObjectiveValue> population, std::int64_t n,
                       std::size_t mu) {
  return is_optimal_spread(interval_profile(population, n, mu), n, mu);
}

LexKey lex_key_min(const IntervalProfile& profile) {
  if (!profile.defined()) throw std::logic_error("lex_key_min: profile undefined");
  return {-profile.min_gap, static_cast<std::int64_t>(profile.min_count)};
}

LexKey lex_key_max(const IntervalProfile& profile) {
  if (!profile.defined()) throw std::logic_error("lex_key_max: profile undefined");
  return {profile.max_gap, static_cast<std::int64_t>(profile.max_count)};
}

}  // namespace spreadlab
