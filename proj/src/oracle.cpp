#include "spreadlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <omp.h>

#include "spreadlab/nsga2.hpp"
#include "spreadlab/spea2.hpp"

namespace spreadlab {

namespace {

// Members of `r` whose sorted vector of integer first-objective distances is
// lexicographically minimal. On OneMinMax the Euclidean distance is sqrt(2)
// times this one, so the order is the same.
std::vector<std::size_t> sigma_losers(const std::vector<std::int64_t>& r) {
  std::vector<std::vector<std::int64_t>> sig(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j)
      if (i != j) sig[i].push_back(std::llabs(r[i] - r[j]));
    std::sort(sig[i].begin(), sig[i].end());
  }
  const auto best = *std::min_element(sig.begin(), sig.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (sig[i] == best) out.push_back(i);
  return out;
}

// Crowding on OneMinMax: both objectives span the same range, so comparing
// the summed neighbour gaps of the two stable sorts orders the totals.
std::vector<std::size_t> crowding_losers(const std::vector<std::int64_t>& r, std::int64_t n) {
  const std::size_t m = r.size();
  std::vector<bool> inf(m, false);
  std::vector<std::int64_t> sum(m, 0);
  for (int k = 0; k < 2; ++k) {
    auto key = [&](std::size_t i) { return k == 0 ? r[i] : n - r[i]; };
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    inf[idx.front()] = true;
    inf[idx.back()] = true;
    for (std::size_t p = 1; p + 1 < m; ++p) sum[idx[p]] += key(idx[p + 1]) - key(idx[p - 1]);
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  bool any_finite = false;
  for (std::size_t i = 0; i < m; ++i)
    if (!inf[i]) {
      best = std::min(best, sum[i]);
      any_finite = true;
    }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m; ++i)
    if (any_finite ? (!inf[i] && sum[i] == best) : true) out.push_back(i);
  return out;
}

}  // namespace

SuccessorDistribution exact_transition_oracle(const ValueMultiset& state,
                                              SteadyStateAlgorithm algorithm, std::int64_t n) {
  if (n < 1 || n > kOracleMaxN) throw std::invalid_argument("oracle: n must lie in [1, 8]");
  if (state.empty() || state.size() > kOracleMaxPopulation)
    throw std::invalid_argument("oracle: population must have 1 to 4 members");
  for (auto v : state)
    if (v < 0 || v > n) throw std::invalid_argument("oracle: value outside [0, n]");

  ValueMultiset sorted = state;
  std::sort(sorted.begin(), sorted.end());
  const double mu = static_cast<double>(sorted.size());
  const double dn = static_cast<double>(n);

  SuccessorDistribution dist;
  for (std::size_t parent = 0; parent < sorted.size(); ++parent) {
    const std::int64_t k = sorted[parent];
    // 1-bit mutation: one of k ones or one of n-k zeros flips.
    const std::pair<std::int64_t, double> moves[] = {{k - 1, static_cast<double>(k) / dn},
                                                     {k + 1, static_cast<double>(n - k) / dn}};
    for (const auto& [child, p_child] : moves) {
      if (p_child == 0.0) continue;
      std::vector<std::int64_t> r = sorted;
      r.push_back(child);
      const auto losers =
          algorithm == SteadyStateAlgorithm::Spea2 ? sigma_losers(r) : crowding_losers(r, n);
      const double branch = p_child / mu / static_cast<double>(losers.size());
      for (auto drop : losers) {
        ValueMultiset next;
        for (std::size_t i = 0; i < r.size(); ++i)
          if (i != drop) next.push_back(r[i]);
        std::sort(next.begin(), next.end());
        dist[next] += branch;
      }
    }
  }
  return dist;
}

namespace {

template <class Genome>
SuccessorDistribution sample_with(const ValueMultiset& state, SteadyStateAlgorithm algorithm,
                                  std::int64_t n, std::size_t samples, RandomSource& rng) {
  ValueMultiset sorted = state;
  std::sort(sorted.begin(), sorted.end());
  const auto start = population_from_values<Genome>(sorted, static_cast<std::size_t>(n));
  const std::span<const Genome> parents(start);
  const Spea2Config spea{start.size(), 1, MutationKind::OneBit,
                         DistanceMetric::EuclideanBiObjective};
  std::map<ValueMultiset, std::size_t> counts;
  ValueMultiset key;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto step = algorithm == SteadyStateAlgorithm::Spea2
                          ? spea2_iteration(parents, spea, rng)
                          : steady_state_nsga2_iteration(parents, MutationKind::OneBit, rng);
    key.clear();
    for (const auto& g : step.next) key.push_back(evaluate_omm(g).f1);
    std::sort(key.begin(), key.end());
    ++counts[key];
  }
  SuccessorDistribution dist;
  for (const auto& [k, c] : counts)
    dist[k] = static_cast<double>(c) / static_cast<double>(samples);
  return dist;
}

}  // namespace

SuccessorDistribution sample_successors(const ValueMultiset& state, SteadyStateAlgorithm algorithm,
                                        std::int64_t n, std::size_t samples, RandomSource& rng,
                                        Representation representation) {
  if (n < 1) throw std::invalid_argument("sample_successors: n must be positive");
  if (samples == 0) throw std::invalid_argument("sample_successors: needs at least one sample");
  return representation == Representation::Genome
             ? sample_with<Individual>(state, algorithm, n, samples, rng)
             : sample_with<OnesCount>(state, algorithm, n, samples, rng);
}

double total_variation(const SuccessorDistribution& a, const SuccessorDistribution& b) {
  double sum = 0.0;
  for (const auto& [k, p] : a) {
    const auto it = b.find(k);
    sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, p] : b)
    if (!a.contains(k)) sum += p;
  return 0.5 * sum;
}

std::vector<ValueMultiset> enumerate_states(std::int64_t n, std::size_t size) {
  std::vector<ValueMultiset> out;
  if (size == 0) return out;
  ValueMultiset cur(size, 0);
  while (true) {
    out.push_back(cur);
    // Next non-decreasing sequence over [0, n].
    std::size_t i = size;
    while (i > 0 && cur[i - 1] == n) --i;
    if (i == 0) break;
    const std::int64_t v = cur[i - 1] + 1;
    for (std::size_t j = i - 1; j < size; ++j) cur[j] = v;
  }
  return out;
}

std::vector<OracleCheckRow> oracle_sweep(std::int64_t n, std::size_t mu,
                                         SteadyStateAlgorithm algorithm, std::size_t samples,
                                         std::uint64_t seed, int threads,
                                         Representation representation) {
  const auto states = enumerate_states(n, mu);
  std::vector<OracleCheckRow> rows(states.size());
  std::exception_ptr failure;
  const int team = threads > 0 ? threads : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(states.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      const auto& s = states[static_cast<std::size_t>(i)];
      RandomSource rng(seed, static_cast<std::uint64_t>(i));
      const auto exact = exact_transition_oracle(s, algorithm, n);
      const auto empirical = sample_successors(s, algorithm, n, samples, rng, representation);
      rows[static_cast<std::size_t>(i)] = {s, total_variation(exact, empirical)};
    } catch (...) {
#pragma omp critical(spreadlab_oracle_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace spreadlab
