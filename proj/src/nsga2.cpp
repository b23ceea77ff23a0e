#include "spreadlab/nsga2.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace spreadlab {

FrontPartition nondominated_sort(std::span<const ObjectiveValue> values, std::size_t target) {
  if (values.empty()) throw std::invalid_argument("nondominated_sort: empty population");
  FrontPartition part;
  std::vector<std::size_t> rest(values.size());
  std::iota(rest.begin(), rest.end(), std::size_t{0});
  std::size_t cumulative = 0;
  bool critical_found = false;
  while (!rest.empty()) {
    std::vector<std::size_t> front, next;
    for (auto i : rest) {
      const bool dominated = std::any_of(rest.begin(), rest.end(), [&](std::size_t j) {
        return strictly_dominates(values[j], values[i]);
      });
      (dominated ? next : front).push_back(i);
    }
    cumulative += front.size();
    part.fronts.push_back(std::move(front));
    if (!critical_found && cumulative >= target) {
      part.critical = part.fronts.size() - 1;
      critical_found = true;
    }
    rest = std::move(next);
  }
  if (!critical_found) part.critical = part.fronts.size() - 1;
  return part;
}

double CrowdingAssignment::value(std::size_t i) const noexcept {
  if (infinite[i]) return std::numeric_limits<double>::infinity();
  return static_cast<double>(numerator[i]) / static_cast<double>(scale);
}

bool CrowdingAssignment::less(std::size_t a, std::size_t b) const noexcept {
  if (infinite[a]) return false;
  if (infinite[b]) return true;
  return numerator[a] < numerator[b];
}

bool CrowdingAssignment::equal(std::size_t a, std::size_t b) const noexcept {
  if (infinite[a] || infinite[b]) return infinite[a] == infinite[b];
  return numerator[a] == numerator[b];
}

CrowdingAssignment crowding_distance(std::span<const ObjectiveValue> front) {
  const std::size_t m = front.size();
  CrowdingAssignment ca;
  ca.infinite.assign(m, false);
  ca.numerator.assign(m, 0);
  if (m == 0) return ca;

  auto objective = [&](std::size_t i, int k) { return k == 0 ? front[i].f1 : front[i].f2; };
  std::array<std::int64_t, 2> range{};
  for (int k = 0; k < 2; ++k) {
    auto& order = ca.order[k];
    order.resize(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return objective(a, k) < objective(b, k);
    });
    range[k] = objective(order.back(), k) - objective(order.front(), k);
  }
  // Each objective contributes gap_k / range_k; an all-equal objective has
  // only zero gaps, so a unit range keeps its contribution at 0.
  const std::int64_t r0 = std::max<std::int64_t>(range[0], 1);
  const std::int64_t r1 = std::max<std::int64_t>(range[1], 1);
  ca.scale = r0 * r1;
  for (int k = 0; k < 2; ++k) {
    const auto& order = ca.order[k];
    const std::int64_t weight = k == 0 ? r1 : r0;
    ca.infinite[order.front()] = true;
    ca.infinite[order.back()] = true;
    for (std::size_t pos = 1; pos + 1 < m; ++pos) {
      const std::int64_t gap = objective(order[pos + 1], k) - objective(order[pos - 1], k);
      ca.numerator[order[pos]] += gap * weight;
    }
  }
  return ca;
}

Selection classic_survival(std::span<const ObjectiveValue> combined, std::size_t target,
                           RandomSource& rng) {
  Selection sel;
  if (combined.size() <= target) {
    sel.kept.resize(combined.size());
    std::iota(sel.kept.begin(), sel.kept.end(), std::size_t{0});
    return sel;
  }
  const FrontPartition part = nondominated_sort(combined, target);
  std::size_t before = 0;
  for (std::size_t j = 0; j < part.critical; ++j) {
    before += part.fronts[j].size();
    sel.kept.insert(sel.kept.end(), part.fronts[j].begin(), part.fronts[j].end());
  }
  const auto& crit = part.fronts[part.critical];
  std::size_t excess = before + crit.size() > target ? before + crit.size() - target : 0;

  std::vector<ObjectiveValue> crit_values;
  crit_values.reserve(crit.size());
  for (auto i : crit) crit_values.push_back(combined[i]);
  const CrowdingAssignment ca = crowding_distance(crit_values);

  std::vector<std::size_t> alive(crit.size());
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  std::vector<std::size_t> ties;
  for (; excess > 0; --excess) {
    std::size_t best = alive.front();
    for (auto a : alive)
      if (ca.less(a, best)) best = a;
    ties.clear();
    for (auto a : alive)
      if (ca.equal(a, best)) ties.push_back(a);
    const std::size_t pick = ties.size() == 1 ? ties[0] : ties[rng.uniform_index(ties.size())];
    alive.erase(std::find(alive.begin(), alive.end(), pick));
    sel.removed.push_back(crit[pick]);
  }
  for (auto a : alive) sel.kept.push_back(crit[a]);
  for (std::size_t j = part.critical + 1; j < part.fronts.size(); ++j)
    sel.removed.insert(sel.removed.end(), part.fronts[j].begin(), part.fronts[j].end());
  std::sort(sel.kept.begin(), sel.kept.end());
  return sel;
}

}  // namespace spreadlab
