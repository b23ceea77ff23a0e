#pragma once

// Genotypes, the OneMinMax objective and dominance bookkeeping shared by
// both algorithms.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spreadlab {

/// Bi-objective value under maximization.
struct ObjectiveValue {
  std::int64_t f1 = 0;
  std::int64_t f2 = 0;

  friend constexpr auto operator<=>(const ObjectiveValue&, const ObjectiveValue&) = default;
};

/// Fixed-length bitstring stored in packed 64-bit words with a maintained
/// ones counter.
class Individual {
 public:
  /// All-zeros string of length n (n >= 1).
  explicit Individual(std::size_t n);

  /// Parses a string of '0'/'1' characters; position 0 is the first character.
  static Individual from_string(std::string_view bits);
  /// 1^k 0^(n-k).
  static Individual ones_prefix(std::size_t n, std::size_t k);

  std::size_t size() const noexcept { return n_; }
  std::size_t ones() const noexcept { return ones_; }
  bool bit(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }

  void flip(std::size_t i) noexcept;

  std::string to_string() const;

  friend bool operator==(const Individual&, const Individual&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t n_;
  std::size_t ones_ = 0;
};

/// OneMinMax fast-path genome: only the ones-count of an individual of
/// length n is kept.
struct OnesCount {
  std::size_t n = 1;
  std::size_t ones = 0;

  std::size_t size() const noexcept { return n; }

  friend bool operator==(const OnesCount&, const OnesCount&) = default;
};

ObjectiveValue evaluate_omm(const Individual& x) noexcept;
ObjectiveValue evaluate_omm(const OnesCount& x) noexcept;

enum class Dominance { FirstStrict, SecondStrict, MutuallyWeak, Incomparable };

Dominance compare_dominance(const ObjectiveValue& u, const ObjectiveValue& v) noexcept;

inline bool weakly_dominates(const ObjectiveValue& u, const ObjectiveValue& v) noexcept {
  return u.f1 >= v.f1 && u.f2 >= v.f2;
}

inline bool strictly_dominates(const ObjectiveValue& u, const ObjectiveValue& v) noexcept {
  return weakly_dominates(u, v) && u != v;
}

/// Indices of members not strictly dominated by any member, in input order.
/// Duplicates are retained. Throws std::invalid_argument on empty input.
std::vector<std::size_t> non_dominated(std::span<const ObjectiveValue> population);

/// Number of distinct objective values.
std::size_t distinct_objective_count(std::span<const ObjectiveValue> population);

template <class Genome>
std::vector<ObjectiveValue> objective_values(std::span<const Genome> population) {
  std::vector<ObjectiveValue> out;
  out.reserve(population.size());
  for (const auto& g : population) out.push_back(evaluate_omm(g));
  return out;
}

/// OneMinMax objective values for the given first-objective values.
std::vector<ObjectiveValue> omm_values(std::span<const std::int64_t> f1, std::int64_t n);
std::vector<ObjectiveValue> omm_values(std::initializer_list<std::int64_t> f1, std::int64_t n);

/// Builds a population whose ones-counts are `f1`; genomes are sorted
/// prefixes 1^k 0^(n-k).
template <class Genome>
std::vector<Genome> population_from_values(std::span<const std::int64_t> f1, std::size_t n);

template <>
std::vector<Individual> population_from_values<Individual>(std::span<const std::int64_t> f1,
                                                           std::size_t n);
template <>
std::vector<OnesCount> population_from_values<OnesCount>(std::span<const std::int64_t> f1,
                                                         std::size_t n);

}  // namespace spreadlab
