#include "spreadlab/variation.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace spreadlab {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

std::size_t RandomSource::uniform_index(std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_index: bound must be positive");
  if (bound == 1) return 0;
  boost::random::uniform_int_distribution<std::size_t> dist(0, bound - 1);
  return dist(engine_);
}

bool RandomSource::bernoulli(double p) {
  boost::random::uniform_01<double> u;
  return u(engine_) < p;
}

std::size_t RandomSource::binomial(std::size_t trials, double p) {
  if (trials == 0) return 0;
  boost::random::binomial_distribution<long long, double> dist(static_cast<long long>(trials), p);
  return static_cast<std::size_t>(dist(engine_));
}

std::string_view to_string(MutationKind kind) noexcept {
  return kind == MutationKind::OneBit ? "one-bit" : "standard-bit";
}

MutationKind parse_mutation_kind(std::string_view text) {
  if (text == "one-bit") return MutationKind::OneBit;
  if (text == "standard-bit") return MutationKind::StandardBit;
  throw std::invalid_argument("unknown mutation kind: " + std::string(text));
}

Individual one_bit_mutation(const Individual& x, RandomSource& rng) {
  Individual y = x;
  y.flip(rng.uniform_index(x.size()));
  return y;
}

Individual standard_bit_mutation(const Individual& x, RandomSource& rng) {
  const std::size_t n = x.size();
  const std::size_t flips = rng.binomial(n, 1.0 / static_cast<double>(n));
  // Floyd's sampling of `flips` distinct positions.
  std::vector<std::size_t> chosen;
  chosen.reserve(flips);
  for (std::size_t j = n - flips; j < n; ++j) {
    const std::size_t t = rng.uniform_index(j + 1);
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(j);
    }
  }
  Individual y = x;
  for (auto i : chosen) y.flip(i);
  return y;
}

std::size_t ones_count_transition(std::size_t k, std::size_t n, MutationKind kind,
                                  RandomSource& rng) {
  if (n == 0 || k > n) throw std::invalid_argument("ones_count_transition: k out of range");
  if (kind == MutationKind::OneBit) {
    return rng.uniform_index(n) < k ? k - 1 : k + 1;
  }
  const double p = 1.0 / static_cast<double>(n);
  const std::size_t lost = rng.binomial(k, p);
  const std::size_t gained = rng.binomial(n - k, p);
  return k - lost + gained;
}

Individual mutate(const Individual& x, MutationKind kind, RandomSource& rng) {
  return kind == MutationKind::OneBit ? one_bit_mutation(x, rng) : standard_bit_mutation(x, rng);
}

OnesCount mutate(const OnesCount& x, MutationKind kind, RandomSource& rng) {
  return {x.n, ones_count_transition(x.ones, x.n, kind, rng)};
}

Individual random_individual(std::size_t n, RandomSource& rng) {
  Individual x(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & 63) == 0) word = rng.next_word();
    if ((word >> (i & 63)) & 1U) x.flip(i);
  }
  return x;
}

}  // namespace spreadlab
