#include "spreadlab/core.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace spreadlab {

Individual::Individual(std::size_t n) : words_((n + 63) / 64, 0), n_(n) {
  if (n == 0) throw std::invalid_argument("Individual: length must be at least 1");
}

Individual Individual::from_string(std::string_view bits) {
  Individual x(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      x.flip(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("Individual: expected only '0' and '1'");
    }
  }
  return x;
}

Individual Individual::ones_prefix(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("Individual: ones count exceeds length");
  Individual x(n);
  for (std::size_t i = 0; i < k; ++i) x.flip(i);
  return x;
}

void Individual::flip(std::size_t i) noexcept {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  std::uint64_t& w = words_[i >> 6];
  ones_ += (w & mask) ? std::size_t(-1) : std::size_t(1);
  w ^= mask;
}

std::string Individual::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (bit(i)) s[i] = '1';
  return s;
}

ObjectiveValue evaluate_omm(const Individual& x) noexcept {
  const auto k = static_cast<std::int64_t>(x.ones());
  return {k, static_cast<std::int64_t>(x.size()) - k};
}

ObjectiveValue evaluate_omm(const OnesCount& x) noexcept {
  const auto k = static_cast<std::int64_t>(x.ones);
  return {k, static_cast<std::int64_t>(x.n) - k};
}

Dominance compare_dominance(const ObjectiveValue& u, const ObjectiveValue& v) noexcept {
  if (u == v) return Dominance::MutuallyWeak;
  if (weakly_dominates(u, v)) return Dominance::FirstStrict;
  if (weakly_dominates(v, u)) return Dominance::SecondStrict;
  return Dominance::Incomparable;
}

std::vector<std::size_t> non_dominated(std::span<const ObjectiveValue> population) {
  if (population.empty()) throw std::invalid_argument("non_dominated: empty population");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < population.size(); ++i) {
    const bool dominated = std::any_of(population.begin(), population.end(),
                                       [&](const ObjectiveValue& y) {
                                         return strictly_dominates(y, population[i]);
                                       });
    if (!dominated) out.push_back(i);
  }
  return out;
}

std::size_t distinct_objective_count(std::span<const ObjectiveValue> population) {
  std::vector<ObjectiveValue> v(population.begin(), population.end());
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

std::vector<ObjectiveValue> omm_values(std::span<const std::int64_t> f1, std::int64_t n) {
  std::vector<ObjectiveValue> out;
  out.reserve(f1.size());
  for (auto k : f1) out.push_back({k, n - k});
  return out;
}

std::vector<ObjectiveValue> omm_values(std::initializer_list<std::int64_t> f1, std::int64_t n) {
  return omm_values(std::span<const std::int64_t>(f1.begin(), f1.size()), n);
}

template <>
std::vector<Individual> population_from_values<Individual>(std::span<const std::int64_t> f1,
                                                           std::size_t n) {
  std::vector<Individual> out;
  out.reserve(f1.size());
  for (auto k : f1) {
    if (k < 0) throw std::invalid_argument("population_from_values: negative ones-count");
    out.push_back(Individual::ones_prefix(n, static_cast<std::size_t>(k)));
  }
  return out;
}

template <>
std::vector<OnesCount> population_from_values<OnesCount>(std::span<const std::int64_t> f1,
                                                         std::size_t n) {
  if (n == 0) throw std::invalid_argument("population_from_values: n must be at least 1");
  std::vector<OnesCount> out;
  out.reserve(f1.size());
  for (auto k : f1) {
    if (k < 0 || static_cast<std::size_t>(k) > n)
      throw std::invalid_argument("population_from_values: ones-count out of range");
    out.push_back({n, static_cast<std::size_t>(k)});
  }
  return out;
}

}  // namespace spreadlab
