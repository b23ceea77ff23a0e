#include <catch_amalgamated.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spreadlab/core.hpp"
#include "spreadlab/harness.hpp"
#include "spreadlab/invariants.hpp"
#include "spreadlab/spea2.hpp"
#include "spreadlab/spread.hpp"

using namespace spreadlab;

namespace {

IntervalProfile prof(std::initializer_list<std::int64_t> f1, std::int64_t n) {
  const auto v = omm_values(f1, n);
  return interval_profile(v, n, v.size());
}

StepEvent event_with(std::size_t parent, std::size_t removed) {
  StepEvent e;
  e.parents = {parent};
  e.offspring = {{1, 1}};
  e.removed = {removed};
  return e;
}

}  // namespace

TEST_CASE("monitor_archive", "[invariants]") {
  const auto three = omm_values({0, 2, 4}, 4);
  const auto four = omm_values({0, 1, 2, 4}, 4);
  const auto two = omm_values({0, 2, 2}, 4);
  CHECK_FALSE(monitor_archive(three, omm_values({0, 2, 4}, 4)));
  CHECK_FALSE(monitor_archive(three, four));
  const auto r = monitor_archive(three, two);
  REQUIRE(r);
  CHECK(r->monitor_id == monitor_id::kArchive);
  // Off the OneMinMax front line the hypothesis fails and the monitor is inert.
  const std::vector<ObjectiveValue> off{{3, 3}, {1, 1}, {2, 0}};
  CHECK_FALSE(monitor_archive(off, std::vector<ObjectiveValue>{{3, 3}, {3, 3}, {3, 3}}));
}

TEST_CASE("monitor_min_gap", "[invariants]") {
  CHECK_FALSE(monitor_min_gap(prof({0, 2, 5, 8}, 8), prof({0, 2, 4, 8}, 8)));
  CHECK_FALSE(monitor_min_gap(prof({0, 2, 5, 8}, 8), prof({0, 3, 5, 8}, 8)));
  CHECK(monitor_min_gap(prof({0, 3, 6, 9}, 9), prof({0, 2, 6, 9}, 9)));
  // Undefined profiles are outside the hypotheses.
  CHECK_FALSE(monitor_min_gap(prof({0, 3, 3, 9}, 9), prof({0, 1, 6, 9}, 9)));
}

TEST_CASE("monitor_lex_keys", "[invariants]") {
  // (-2,3) -> (-2,2)
  CHECK_FALSE(monitor_lex_keys(prof({0, 2, 4, 6, 10}, 10), prof({0, 2, 4, 7, 10}, 10)));
  // (-2,2) -> (-3,4): X grew.
  CHECK_FALSE(monitor_lex_keys(prof({0, 2, 4, 7, 12}, 12), prof({0, 3, 6, 9, 12}, 12)));
  // (-X, N) increasing: X 3 -> 2.
  const auto r = monitor_lex_keys(prof({0, 3, 6, 9}, 9), prof({0, 2, 6, 9}, 9));
  REQUIRE(r);
  CHECK(r->monitor_id == monitor_id::kLexKeys);
  // (Y, M) = (4,1) -> (4,2) with (-X, N) fixed. No single step on one n
  // produces this, so the profiles are fabricated.
  IntervalProfile a, b;
  a.status = b.status = ProfileStatus::Defined;
  a.min_gap = b.min_gap = 2;
  a.min_count = b.min_count = 1;
  a.max_gap = b.max_gap = 4;
  a.max_count = 1;
  b.max_count = 2;
  CHECK(monitor_lex_keys(a, b));
  CHECK_FALSE(monitor_lex_keys(b, a));
}

TEST_CASE("monitor_easy_removal", "[invariants]") {
  const auto p = prof({0, 3, 6, 9}, 9);  // X = 3 > 1, mu = 4
  CHECK_FALSE(monitor_easy_removal(event_with(1, 4), p, 4));  // offspring removed
  CHECK_FALSE(monitor_easy_removal(event_with(1, 1), p, 4));  // parent removed
  const auto r = monitor_easy_removal(event_with(1, 2), p, 4);
  REQUIRE(r);
  CHECK(r->monitor_id == monitor_id::kEasyRemoval);
  // X = 1: inert.
  CHECK_FALSE(monitor_easy_removal(event_with(1, 2), prof({0, 1, 6, 9}, 9), 4));
}

TEST_CASE("monitor_border_persistence", "[invariants]") {
  // n=20, mu=5: alpha=5, beta=4. Gaps (3,7,5,5): X=3 at the lower border.
  const auto ab = alpha_beta(20, 5);
  const auto before = prof({0, 3, 10, 15, 20}, 20);
  CHECK_FALSE(monitor_border_persistence(before, prof({0, 3, 9, 15, 20}, 20), ab));
  // (X, N_min) changed: inert even though L1 is no longer minimal.
  CHECK_FALSE(monitor_border_persistence(before, prof({0, 4, 10, 15, 20}, 20), ab));
  // X and N_min unchanged but the minimal interval moved inward.
  const auto r = monitor_border_persistence(before, prof({0, 4, 7, 15, 20}, 20), ab);
  REQUIRE(r);
  CHECK(r->monitor_id == monitor_id::kBorder);
  // Upper border, symmetric.
  CHECK(monitor_border_persistence(prof({0, 5, 10, 17, 20}, 20), prof({0, 5, 13, 16, 20}, 20), ab));
}

TEST_CASE("monitor_extremes", "[invariants]") {
  const auto both = omm_values({0, 3, 9}, 9);
  CHECK_FALSE(monitor_extremes(both, omm_values({0, 4, 9}, 9), 9));
  CHECK_FALSE(monitor_extremes(omm_values({1, 3, 9}, 9), omm_values({1, 4, 8}, 9), 9));
  const auto r = monitor_extremes(both, omm_values({0, 3, 8}, 9), 9);
  REQUIRE(r);
  CHECK(r->monitor_id == monitor_id::kExtremes);
}

TEST_CASE("monitored SPEA2 runs report nothing and are unchanged by monitoring", "[invariants]") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ExperimentConfig cfg;
    cfg.algorithm = Algorithm::Spea2SteadyState;
    cfg.n = 24;
    cfg.mu = 6;
    cfg.stop.max_evaluations = 2000000;
    cfg.seeds = {seed};
    const auto plain = run_single(cfg, seed);
    cfg.monitors = true;
    const auto watched = run_single(cfg, seed);
    CHECK(watched.reports.empty());
    CHECK(watched.reached_optimal);
    REQUIRE(plain.iterations == watched.iterations);
    REQUIRE(plain.final_values == watched.final_values);
    REQUIRE(plain.samples.size() == watched.samples.size());
  }
}

TEST_CASE("NSGA-II monitoring is advisory", "[invariants]") {
  MonitorSuite suite(MonitoredAlgorithm::Nsga2, true, MutationKind::OneBit);
  const auto prev = omm_values({0, 2, 4}, 4);
  const auto next = omm_values({0, 2, 2}, 4);
  const auto pp = interval_profile(prev, 4, 3);
  const auto np = interval_profile(next, 4, 3);
  StepEvent ev;
  TrajectoryRecord rec;
  suite.on_step({4, 3, prev, next, pp, np, ev}, rec);
  REQUIRE(rec.reports.size() == 1);
  CHECK(rec.reports[0].severity == "advisory");
  CHECK(count_violations(rec.reports) == 0);

  MonitorSuite spea(MonitoredAlgorithm::Spea2, true, MutationKind::OneBit);
  TrajectoryRecord rec2;
  spea.on_step({4, 3, prev, next, pp, np, ev}, rec2);
  CHECK(count_violations(rec2.reports) >= 1);
}

TEST_CASE("reports serialize to one JSON object per line", "[invariants]") {
  auto r = *monitor_min_gap(prof({0, 3, 6, 9}, 9), prof({0, 2, 6, 9}, 9));
  r.iteration = 17;
  r.before = prof({0, 3, 6, 9}, 9);
  r.after = prof({0, 2, 6, 9}, 9);
  r.event = event_with(1, 4);
  std::vector<MonitorReport> reports{r, r};
  std::ostringstream out;
  write_reports_jsonl(out, reports);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["monitor"] == monitor_id::kMinGap);
    CHECK(j["iteration"] == 17);
    CHECK(j["before"]["X"] == 3);
    CHECK(j["after"]["gaps"].get<std::vector<int>>() == std::vector<int>{2, 4, 3});
    CHECK(j["event"]["removed"].get<std::vector<int>>() == std::vector<int>{4});
    ++lines;
  }
  CHECK(lines == 2);
}
