// Acceptance run: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--expect-fail 3,...] [--threads T]
// Exit 0 iff the set of failing criteria equals the expected set, so a
// documented failure keeps CI green while any change in outcome does not.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/harness.hpp"
#include "spreadlab/invariants.hpp"
#include "spreadlab/oracle.hpp"
#include "spreadlab/spread.hpp"
#include "spreadlab/variation.hpp"

using namespace spreadlab;

namespace {

int g_threads = 0;

std::vector<std::uint64_t> seed_range(std::uint64_t count, std::uint64_t first = 0) {
  std::vector<std::uint64_t> s(count);
  for (std::uint64_t i = 0; i < count; ++i) s[i] = first + i;
  return s;
}

double envelope(double n, double mu) { return 10.0 * optimal_spread_envelope(n, mu); }

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome criterion_monitors() {
  const std::vector<std::pair<std::size_t, std::size_t>> cells{{24, 8}, {48, 8}, {48, 16}};
  std::size_t runs = 0, reports = 0, reached = 0;
  std::ostringstream d;
  for (const auto& [n, mu] : cells) {
    ExperimentConfig cfg;
    cfg.algorithm = Algorithm::Spea2SteadyState;
    cfg.n = n;
    cfg.mu = mu;
    cfg.monitors = true;
    cfg.sample_every = 0;
    cfg.stop.max_evaluations = static_cast<std::uint64_t>(envelope(double(n), double(mu)));
    cfg.seeds = seed_range(200);
    for (const auto& r : run_replications(cfg, g_threads)) {
      ++runs;
      reports += r.reports.size();
      reached += r.reached_optimal ? 1 : 0;
    }
  }
  d << runs << " runs over (24,8),(48,8),(48,16); " << reached << " reached optimal spread; "
    << reports << " monitor reports";
  return {reports == 0 && reached == runs, d.str()};
}

Outcome criterion_envelope() {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::Spea2SteadyState;
  cfg.n = 48;
  cfg.mu = 8;
  cfg.sample_every = 0;
  const double env = envelope(48, 8);
  cfg.stop.max_evaluations = static_cast<std::uint64_t>(10 * env);
  cfg.seeds = seed_range(100);
  std::vector<double> evals;
  std::size_t under = 0;
  for (const auto& r : run_replications(cfg, g_threads)) {
    if (!r.optimal) continue;
    const auto e = static_cast<double>(r.optimal->evaluations);
    evals.push_back(e);
    under += e <= env ? 1 : 0;
  }
  const double med = median(evals);
  const double worst = evals.empty() ? std::nan("") : *std::max_element(evals.begin(), evals.end());
  std::ostringstream d;
  d << under << "/" << cfg.seeds.size() << " under 10*mu^2*n*ln(mu)*ln(n) = " << env
    << "; median " << med << " (ratio " << med / env << "), max " << worst << " (ratio "
    << worst / env << ")";
  return {under == cfg.seeds.size(), d.str()};
}

ExperimentConfig counterexample_config(Algorithm algo, std::size_t n, std::int64_t c) {
  ExperimentConfig cfg;
  cfg.algorithm = algo;
  cfg.n = n;
  cfg.c = c;
  cfg.mu = n / static_cast<std::size_t>(c) + 1;
  cfg.init = InitKind::Counterexample;
  return cfg;
}

Outcome criterion_counterexample() {
  auto cfg = counterexample_config(Algorithm::Nsga2SteadyState, 64, 2);
  cfg.stop.max_iterations = 64ull * 64 * 64;
  cfg.seeds = seed_range(50);
  std::size_t reached = 0;
  std::vector<double> hit;
  for (const auto& r : run_replications(cfg, g_threads)) {
    if (!r.reached_optimal) continue;
    ++reached;
    hit.push_back(static_cast<double>(r.iterations));
  }
  const double fraction = static_cast<double>(reached) / static_cast<double>(cfg.seeds.size());

  auto spea = counterexample_config(Algorithm::Spea2SteadyState, 64, 2);
  const double env = envelope(64, 33);
  spea.stop.max_evaluations = static_cast<std::uint64_t>(env);
  spea.seeds = cfg.seeds;
  std::size_t spea_reached = 0;
  std::vector<double> spea_evals;
  for (const auto& r : run_replications(spea, g_threads)) {
    if (!r.optimal) continue;
    ++spea_reached;
    spea_evals.push_back(static_cast<double>(r.optimal->evaluations));
  }

  std::ostringstream d;
  d << "nsga2-ss n=64 c=2: " << reached << "/50 reached optimal spread within n^3 iterations"
    << " (fraction " << fraction << ", limit 0.10; median hit iteration " << median(hit)
    << "); spea2-ss mu=33 companion: " << spea_reached << "/50 within " << env
    << " evaluations (median " << median(spea_evals) << ")";
  return {fraction <= 0.10 && spea_reached == spea.seeds.size(), d.str()};
}

// Same experiment at c=3, where the c+1 and c-1 gaps differ from c by one
// while no longer tying with a c-gap endpoint.
std::string counterexample_c3_note() {
  auto cfg = counterexample_config(Algorithm::Nsga2SteadyState, 96, 3);
  cfg.stop.max_iterations = 96ull * 96 * 96;
  cfg.sample_every = 4096;
  cfg.seeds = seed_range(4);
  std::size_t reached = 0;
  for (const auto& r : run_replications(cfg, g_threads)) reached += r.reached_optimal ? 1 : 0;
  std::ostringstream d;
  d << "nsga2-ss n=96 c=3: " << reached << "/4 reached optimal spread within n^3 iterations";
  return d.str();
}

DriftEstimate probe(std::size_t n, std::size_t seeds, std::uint64_t cap) {
  auto cfg = counterexample_config(Algorithm::Nsga2SteadyState, n, 2);
  cfg.drift_probe = true;
  cfg.sample_every = 0;
  cfg.stop.max_iterations = cap;
  cfg.seeds = seed_range(seeds);
  const auto records = run_replications(cfg, g_threads);
  return estimate_drift(records, static_cast<std::int64_t>(n), 2);
}

Outcome criterion_drift(std::string& note) {
  const auto pooled = probe(64, 4000, 4096);
  const auto state = probe(32, 4000, 4096);
  const double exact = proof_plus_gap_drift(32, 2, 2);
  const auto& at = state.plus_by_index.at(2);
  const bool exact_ok = std::abs(exact - (-25.0 / 35.0)) < 1e-12;
  const bool state_ok = at.up + at.down > 0 && std::abs(at.mean - exact) <= 0.05;
  const bool pooled_ok = pooled.plus.samples >= 10000 && pooled.plus.mean <= -0.4;
  std::ostringstream d;
  d << "pooled c+1 drift on [" << pooled.plus.lo << "," << pooled.plus.hi << "] at n=64: "
    << pooled.plus.mean << " over " << pooled.plus.samples << " moves (95% CI [" << pooled.plus.ci_low
    << ", " << pooled.plus.ci_high << "]); exact at n=32, X'=2: " << exact
    << "; empirical there " << at.mean << " over " << at.up + at.down << " moves";
  std::ostringstream m;
  m << "c-1 gap drift on [" << pooled.minus.lo << "," << pooled.minus.hi << "] at n=64: "
    << pooled.minus.mean << " over " << pooled.minus.samples << " moves, proof range ["
    << pooled.minus.theory_min << ", " << pooled.minus.theory_max << "]; jumps " << pooled.jumps
    << ", merges " << pooled.merges << ", escapes " << pooled.escapes;
  note = m.str();
  return {exact_ok && state_ok && pooled_ok, d.str()};
}

Outcome criterion_oracle() {
  double worst = 0;
  std::size_t states = 0;
  std::string worst_at;
  for (auto algo : {SteadyStateAlgorithm::Spea2, SteadyStateAlgorithm::Nsga2}) {
    for (std::int64_t n = 1; n <= 6; ++n) {
      const auto rows = oracle_sweep(n, 3, algo, 100000, 1000 + static_cast<std::uint64_t>(n),
                                     g_threads);
      for (const auto& row : rows) {
        ++states;
        if (row.tv > worst) {
          worst = row.tv;
          std::ostringstream s;
          s << (algo == SteadyStateAlgorithm::Spea2 ? "spea2" : "nsga2") << " n=" << n << " {";
          for (std::size_t i = 0; i < row.state.size(); ++i) s << (i ? "," : "") << row.state[i];
          s << "}";
          worst_at = s.str();
        }
      }
    }
  }
  std::ostringstream d;
  d << states << " (algorithm, state) pairs; max TV " << worst << " at " << worst_at;
  return {worst <= 0.01, d.str()};
}

Outcome criterion_alpha_beta() {
  std::size_t checked = 0, bad = 0;
  for (std::int64_t n = 2; n <= 256; ++n) {
    for (std::int64_t mu = 2; mu <= n; ++mu) {
      const auto ab = alpha_beta(n, mu);
      ++checked;
      const bool ok = ab.alpha * ab.beta + (ab.alpha + 1) * (mu - 1 - ab.beta) == n &&
                      ab.beta >= 1 && ab.beta <= mu - 1;
      bad += ok ? 0 : 1;
    }
  }
  std::ostringstream d;
  d << checked << " pairs, " << bad << " mismatches";
  return {bad == 0, d.str()};
}

Outcome criterion_extremes() {
  ExperimentConfig base;
  base.algorithm = Algorithm::Spea2SteadyState;
  base.sample_every = 0;
  base.seeds = seed_range(200);
  const std::vector<std::pair<std::size_t, std::size_t>> grid{{32, 8}, {64, 8}, {128, 8}, {256, 8}};
  std::vector<double> ns, means, ref;
  bool all = true;
  std::ostringstream d;
  for (const auto& cell_spec : grid) {
    auto cfg = base;
    cfg.stop.max_evaluations =
        static_cast<std::uint64_t>(envelope(double(cell_spec.first), double(cell_spec.second)));
    const std::vector<std::pair<std::size_t, std::size_t>> one{cell_spec};
    const auto cell = scaling_sweep(one, cfg, g_threads).front();
    const double n = static_cast<double>(cell.n);
    ns.push_back(n);
    means.push_back(cell.mean_extremes);
    ref.push_back(n * std::log(n));
    all = all && std::isfinite(cell.mean_extremes);
    d << "n=" << cell.n << ": " << cell.mean_extremes << " (/(n ln n) " << cell.ratio_extremes
      << "); ";
  }
  const double slope = all ? loglog_slope(ns, means) : std::nan("");
  const double ref_slope = loglog_slope(ns, ref);
  const double ratio = slope / ref_slope;
  d << "slope " << slope << " vs n ln n slope " << ref_slope << ", ratio " << ratio;
  return {all && ratio >= 0.7 && ratio <= 1.3, d.str()};
}

Outcome criterion_mutation() {
  constexpr std::size_t kSamples = 1000000;
  double worst = 0;
  std::string worst_at;
  std::size_t cases = 0;
  for (auto kind : {MutationKind::OneBit, MutationKind::StandardBit}) {
    for (std::size_t n : {4, 8, 16}) {
      for (std::size_t k = 0; k <= n; ++k) {
        RandomSource fast_rng(31, n * 100 + k), genome_rng(32, n * 100 + k);
        std::vector<double> fast(n + 1, 0.0), genome(n + 1, 0.0);
        const auto parent = Individual::ones_prefix(n, k);
        for (std::size_t s = 0; s < kSamples; ++s) {
          fast[ones_count_transition(k, n, kind, fast_rng)] += 1;
          genome[mutate(parent, kind, genome_rng).ones()] += 1;
        }
        double tv = 0;
        for (std::size_t j = 0; j <= n; ++j) tv += std::abs(fast[j] - genome[j]);
        tv /= 2.0 * kSamples;
        ++cases;
        if (tv > worst) {
          worst = tv;
          worst_at = std::string(to_string(kind)) + " n=" + std::to_string(n) +
                     " k=" + std::to_string(k);
        }
      }
    }
  }
  std::ostringstream d;
  d << cases << " (kind, n, k) cases; max TV " << worst << " at " << worst_at;
  return {worst <= 0.01, d.str()};
}

std::set<int> parse_list(const std::string& text) {
  std::set<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected = parse_list(argv[++i]);
    } else if (arg == "--threads" && i + 1 < argc) {
      g_threads = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail N,...] [--threads T]\n", argv[0]);
      return 2;
    }
  }

  std::set<int> failed;
  auto report = [&](int id, const char* name, const Outcome& o, double seconds) {
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!o.pass) failed.insert(id);
  };
  auto timed = [](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return std::pair{o, dt.count()};
  };

  {
    auto [o, s] = timed(criterion_monitors);
    report(1, "invariant monitors", o, s);
  }
  {
    auto [o, s] = timed(criterion_envelope);
    report(2, "optimal-spread envelope", o, s);
  }
  {
    auto [o, s] = timed(criterion_counterexample);
    report(3, "NSGA-II counterexample", o, s);
    std::printf("  info: %s\n", counterexample_c3_note().c_str());
  }
  {
    std::string note;
    auto [o, s] = timed([&] { return criterion_drift(note); });
    report(4, "gap drift", o, s);
    std::printf("  info: %s\n", note.c_str());
  }
  {
    auto [o, s] = timed(criterion_oracle);
    report(5, "oracle equivalence", o, s);
  }
  {
    auto [o, s] = timed(criterion_alpha_beta);
    report(6, "alpha/beta identity", o, s);
  }
  {
    auto [o, s] = timed(criterion_extremes);
    report(7, "extreme-values scaling", o, s);
  }
  {
    auto [o, s] = timed(criterion_mutation);
    report(8, "mutation fast path", o, s);
  }

  std::printf("%zu/8 criteria passed\n", 8 - failed.size());
  if (failed == expected) return 0;
  std::printf("failing set differs from the expected set\n");
  return 1;
}
