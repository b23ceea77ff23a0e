#pragma once

// Mutation operators and the randomness contract.
//
// Every replication owns one RandomSource. Draws are consumed in a fixed
// order per offspring (parent choice, then mutation positions) followed by
// the survival tie-breaks, so any trajectory replays bit-exactly from its
// (seed, stream) pair.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

#include "spreadlab/core.hpp"

namespace spreadlab {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Uniform on [0, bound). bound must be positive.
  std::size_t uniform_index(std::size_t bound);
  std::uint64_t next_word() { return engine_(); }
  bool bernoulli(double p);
  std::size_t binomial(std::size_t trials, double p);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

enum class MutationKind { OneBit, StandardBit };

std::string_view to_string(MutationKind kind) noexcept;
/// Accepts "one-bit" and "standard-bit"; throws std::invalid_argument otherwise.
MutationKind parse_mutation_kind(std::string_view text);

/// Copy of x with exactly one uniformly chosen position flipped.
Individual one_bit_mutation(const Individual& x, RandomSource& rng);

/// Copy of x with every position flipped independently with probability 1/n.
/// Samples the number of flips first, then distinct positions.
Individual standard_bit_mutation(const Individual& x, RandomSource& rng);

/// Ones-count of a mutated offspring of any parent with k ones.
/// The one-bit draw matches one_bit_mutation on the prefix genome 1^k 0^(n-k).
std::size_t ones_count_transition(std::size_t k, std::size_t n, MutationKind kind,
                                  RandomSource& rng);

Individual mutate(const Individual& x, MutationKind kind, RandomSource& rng);
OnesCount mutate(const OnesCount& x, MutationKind kind, RandomSource& rng);

/// Uniform sample from {0,1}^n.
Individual random_individual(std::size_t n, RandomSource& rng);

template <class Genome>
Genome random_genome(std::size_t n, RandomSource& rng);

template <>
inline Individual random_genome<Individual>(std::size_t n, RandomSource& rng) {
  return random_individual(n, rng);
}

template <>
inline OnesCount random_genome<OnesCount>(std::size_t n, RandomSource& rng) {
  return {n, rng.binomial(n, 0.5)};
}

}  // namespace spreadlab
