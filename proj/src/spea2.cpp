#include "spreadlab/spea2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spreadlab {

double objective_distance(const ObjectiveValue& u, const ObjectiveValue& v,
                          DistanceMetric metric) noexcept {
  const auto d1 = static_cast<double>(u.f1 - v.f1);
  if (metric == DistanceMetric::FirstObjectiveAbsolute) return std::abs(d1);
  const auto d2 = static_cast<double>(u.f2 - v.f2);
  return std::sqrt(d1 * d1 + d2 * d2);
}

namespace {

SigmaVector sigma_over(std::size_t member, std::span<const ObjectiveValue> values,
                       std::span<const std::size_t> alive, DistanceMetric metric) {
  SigmaVector sigma;
  sigma.reserve(alive.size() - 1);
  for (auto j : alive)
    if (j != member) sigma.push_back(objective_distance(values[member], values[j], metric));
  std::sort(sigma.begin(), sigma.end());
  return sigma;
}

std::vector<std::size_t> lexicographic_minimal(std::span<const ObjectiveValue> values,
                                               std::span<const std::size_t> candidates,
                                               std::span<const std::size_t> alive,
                                               DistanceMetric metric) {
  std::vector<std::size_t> best_members;
  SigmaVector best;
  for (auto a : candidates) {
    SigmaVector s = sigma_over(a, values, alive, metric);
    if (best_members.empty() || s < best) {
      best = std::move(s);
      best_members.assign(1, a);
    } else if (s == best) {
      best_members.push_back(a);
    }
  }
  return best_members;
}

std::vector<std::size_t> all_indices(std::size_t count) {
  std::vector<std::size_t> idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = i;
  return idx;
}

}  // namespace

SigmaVector sigma_vector(std::size_t member, std::span<const ObjectiveValue> values,
                         DistanceMetric metric) {
  if (values.size() < 2) throw std::invalid_argument("sigma_vector: needs at least two members");
  if (member >= values.size()) throw std::invalid_argument("sigma_vector: member out of range");
  const auto alive = all_indices(values.size());
  return sigma_over(member, values, alive, metric);
}

std::vector<std::size_t> sigma_minimizers_reference(std::span<const ObjectiveValue> values,
                                                    std::span<const std::size_t> alive,
                                                    DistanceMetric metric) {
  if (alive.size() < 2) throw std::invalid_argument("sigma_minimizers: needs at least two members");
  return lexicographic_minimal(values, alive, alive, metric);
}

std::vector<std::size_t> sigma_minimizers(std::span<const ObjectiveValue> values,
                                          std::span<const std::size_t> alive,
                                          DistanceMetric metric) {
  if (alive.size() < 2) throw std::invalid_argument("sigma_minimizers: needs at least two members");
  std::vector<double> nearest(alive.size(), std::numeric_limits<double>::infinity());
  for (std::size_t a = 0; a < alive.size(); ++a) {
    for (std::size_t b = a + 1; b < alive.size(); ++b) {
      const double d = objective_distance(values[alive[a]], values[alive[b]], metric);
      nearest[a] = std::min(nearest[a], d);
      nearest[b] = std::min(nearest[b], d);
    }
  }
  const double closest = *std::min_element(nearest.begin(), nearest.end());
  std::vector<std::size_t> candidates;
  for (std::size_t a = 0; a < alive.size(); ++a)
    if (nearest[a] == closest) candidates.push_back(alive[a]);
  if (candidates.size() == 1) return candidates;
  return lexicographic_minimal(values, candidates, alive, metric);
}

namespace detail {

Selection truncate_by_sigma_unchecked(std::span<const ObjectiveValue> values, std::size_t mu,
                                      DistanceMetric metric, RandomSource& rng) {
  Selection sel;
  std::vector<std::size_t> alive = all_indices(values.size());
  while (alive.size() > mu) {
    const auto minimizers = sigma_minimizers(values, alive, metric);
    const std::size_t pick =
        minimizers.size() == 1 ? minimizers[0] : minimizers[rng.uniform_index(minimizers.size())];
    alive.erase(std::find(alive.begin(), alive.end(), pick));
    sel.removed.push_back(pick);
  }
  sel.kept = std::move(alive);
  return sel;
}

Selection spea2_select(std::span<const ObjectiveValue> combined, const Spea2Config& cfg,
                       RandomSource& rng) {
  const std::size_t mu = cfg.mu;
  const auto nd = non_dominated(combined);
  std::vector<bool> in_front(combined.size(), false);
  for (auto i : nd) in_front[i] = true;

  Selection sel;
  if (nd.size() > mu) {
    std::vector<ObjectiveValue> sub;
    sub.reserve(nd.size());
    for (auto i : nd) sub.push_back(combined[i]);
    const Selection local = truncate_by_sigma_unchecked(sub, mu, cfg.metric, rng);
    for (auto i : local.kept) sel.kept.push_back(nd[i]);
    for (auto i : local.removed) sel.removed.push_back(nd[i]);
    for (std::size_t i = 0; i < combined.size(); ++i)
      if (!in_front[i]) sel.removed.push_back(i);
    return sel;
  }

  if (nd.size() < mu) {
    std::vector<std::size_t> pool_idx;
    std::vector<ObjectiveValue> kept_values, pool_values;
    for (auto i : nd) kept_values.push_back(combined[i]);
    for (std::size_t i = 0; i < combined.size(); ++i) {
      if (!in_front[i]) {
        pool_idx.push_back(i);
        pool_values.push_back(combined[i]);
      }
    }
    const auto fill = strength_fill(kept_values, pool_values, mu, rng);
    std::vector<bool> chosen(pool_idx.size(), false);
    for (auto j : fill) chosen[j] = true;
    sel.kept = nd;
    for (std::size_t j = 0; j < pool_idx.size(); ++j) {
      if (chosen[j]) {
        sel.kept.push_back(pool_idx[j]);
      } else {
        sel.removed.push_back(pool_idx[j]);
      }
    }
    std::sort(sel.kept.begin(), sel.kept.end());
    return sel;
  }

  sel.kept = nd;
  for (std::size_t i = 0; i < combined.size(); ++i)
    if (!in_front[i]) sel.removed.push_back(i);
  return sel;
}

}  // namespace detail

Selection truncate_by_sigma(std::span<const ObjectiveValue> values, std::size_t mu,
                            DistanceMetric metric, RandomSource& rng) {
  if (mu == 0 || values.size() <= mu)
    throw std::invalid_argument("truncate_by_sigma: requires 1 <= mu < |P|");
  if (non_dominated(values).size() != values.size())
    throw std::invalid_argument("truncate_by_sigma: population contains dominated members");
  return detail::truncate_by_sigma_unchecked(values, mu, metric, rng);
}

std::vector<std::int64_t> strength_indicator(std::span<const ObjectiveValue> kept,
                                             std::span<const ObjectiveValue> pool) {
  std::vector<ObjectiveValue> all(kept.begin(), kept.end());
  all.insert(all.end(), pool.begin(), pool.end());
  std::vector<std::int64_t> strength(all.size(), 0);
  for (std::size_t y = 0; y < all.size(); ++y)
    for (const auto& z : all)
      if (weakly_dominates(all[y], z)) ++strength[y];

  std::vector<std::int64_t> raw(pool.size(), 0);
  for (std::size_t x = 0; x < pool.size(); ++x)
    for (std::size_t y = 0; y < all.size(); ++y)
      if (strictly_dominates(all[y], pool[x])) raw[x] += strength[y];
  return raw;
}

std::vector<std::size_t> strength_fill(std::span<const ObjectiveValue> kept,
                                       std::span<const ObjectiveValue> pool, std::size_t mu,
                                       RandomSource& rng) {
  if (kept.size() >= mu || kept.size() + pool.size() < mu)
    throw std::invalid_argument("strength_fill: requires |kept| < mu <= |kept| + |pool|");
  const auto raw = strength_indicator(kept, pool);
  std::vector<std::size_t> remaining = all_indices(pool.size());
  std::vector<std::size_t> added;
  while (kept.size() + added.size() < mu) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (auto j : remaining) best = std::min(best, raw[j]);
    std::vector<std::size_t> ties;
    for (auto j : remaining)
      if (raw[j] == best) ties.push_back(j);
    const std::size_t pick = ties.size() == 1 ? ties[0] : ties[rng.uniform_index(ties.size())];
    remaining.erase(std::find(remaining.begin(), remaining.end(), pick));
    added.push_back(pick);
  }
  return added;
}

}  // namespace spreadlab
