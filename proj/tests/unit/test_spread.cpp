#include <catch_amalgamated.hpp>

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "spreadlab/core.hpp"
#include "spreadlab/spread.hpp"

using namespace spreadlab;

namespace {

IntervalProfile profile_of(std::initializer_list<std::int64_t> f1, std::int64_t n) {
  const auto v = omm_values(f1, n);
  return interval_profile(v, n, v.size());
}

// Calls fn on every composition of n into k positive parts.
void for_each_composition(std::int64_t n, std::int64_t k,
                          const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::vector<std::int64_t> parts;
  std::function<void(std::int64_t)> rec = [&](std::int64_t left) {
    if (static_cast<std::int64_t>(parts.size()) == k - 1) {
      parts.push_back(left);
      fn(parts);
      parts.pop_back();
      return;
    }
    const auto remaining = k - 1 - static_cast<std::int64_t>(parts.size());
    for (std::int64_t p = 1; left - p >= remaining; ++p) {
      parts.push_back(p);
      rec(left - p);
      parts.pop_back();
    }
  };
  rec(n);
}

}  // namespace

TEST_CASE("interval_profile on a defined population", "[spread]") {
  const auto p = profile_of({0, 3, 7, 10}, 10);
  REQUIRE(p.defined());
  CHECK(p.gaps == std::vector<std::int64_t>{3, 4, 3});
  CHECK(p.min_gap == 3);
  CHECK(p.min_count == 2);
  CHECK(p.max_gap == 4);
  CHECK(p.max_count == 1);
}

TEST_CASE("interval_profile undefined cases", "[spread]") {
  CHECK(profile_of({1, 3, 7, 10}, 10).status == ProfileStatus::MissingExtremes);
  CHECK(profile_of({0, 3, 7, 9}, 10).status == ProfileStatus::MissingExtremes);
  CHECK(profile_of({0, 3, 3, 10}, 10).status == ProfileStatus::Duplicates);
  // Input order does not matter.
  CHECK(profile_of({10, 0, 7, 3}, 10).gaps == std::vector<std::int64_t>{3, 4, 3});
  const auto v = omm_values({0, 10}, 10);
  CHECK_THROWS_AS(interval_profile(v, 10, 3), std::invalid_argument);
}

TEST_CASE("two extremes form a single gap", "[spread]") {
  const auto p = profile_of({0, 9}, 9);
  REQUIRE(p.defined());
  CHECK(p.gaps == std::vector<std::int64_t>{9});
  CHECK(p.min_gap == 9);
  CHECK(p.max_gap == 9);
}

TEST_CASE("alpha_beta examples", "[spread]") {
  CHECK(alpha_beta(10, 4).alpha == 3);
  CHECK(alpha_beta(10, 4).beta == 2);
  CHECK(alpha_beta(9, 4).alpha == 3);
  CHECK(alpha_beta(9, 4).beta == 3);
  CHECK(alpha_beta(7, 8).alpha == 1);
  CHECK(alpha_beta(7, 8).beta == 7);
  CHECK(alpha_beta(32, 17).alpha == 2);
  CHECK(alpha_beta(32, 17).beta == 16);
  CHECK_THROWS_AS(alpha_beta(10, 1), std::invalid_argument);
  CHECK_THROWS_AS(alpha_beta(10, 12), std::invalid_argument);
  CHECK(alpha_beta(10, 11).beta == 10);
}

TEST_CASE("alpha_beta identity holds exhaustively", "[spread][property]") {
  for (std::int64_t n = 2; n <= 256; ++n)
    for (std::int64_t mu = 2; mu <= n; ++mu) {
      const auto ab = alpha_beta(n, mu);
      REQUIRE(ab.alpha == n / (mu - 1));
      REQUIRE(ab.beta >= 0);
      REQUIRE(ab.beta <= mu - 1);
      REQUIRE(ab.alpha * ab.beta + (ab.alpha + 1) * (mu - 1 - ab.beta) == n);
    }
}

TEST_CASE("is_optimal_spread examples", "[spread]") {
  CHECK(is_optimal_spread(omm_values({0, 3, 7, 10}, 10), 10, 4));
  CHECK_FALSE(is_optimal_spread(omm_values({0, 2, 8, 10}, 10), 10, 4));
  CHECK_FALSE(is_optimal_spread(omm_values({0, 3, 3, 10}, 10), 10, 4));
  CHECK(is_optimal_spread(omm_values({0, 2}, 2), 2, 2));
}

TEST_CASE("lex keys", "[spread]") {
  const auto p = profile_of({0, 3, 7, 10}, 10);
  CHECK(lex_key_min(p) == LexKey{-3, 2});
  CHECK(lex_key_max(p) == LexKey{4, 1});
  const auto undefined = profile_of({0, 3, 3, 10}, 10);
  CHECK_THROWS_AS(lex_key_min(undefined), std::logic_error);
  CHECK_THROWS_AS(lex_key_max(undefined), std::logic_error);
}

TEST_CASE("optimal spread iff lex_key_min is (-alpha, beta), all compositions", "[spread][property]") {
  std::size_t checked = 0;
  for (std::int64_t n = 1; n <= 12; ++n)
    for (std::int64_t gaps = 1; gaps <= n; ++gaps) {
      const std::int64_t mu = gaps + 1;
      const std::int64_t lo = n / gaps;
      const std::int64_t hi = (n + gaps - 1) / gaps;
      for_each_composition(n, gaps, [&](const std::vector<std::int64_t>& parts) {
        std::vector<std::int64_t> f1{0};
        for (auto g : parts) f1.push_back(f1.back() + g);
        const auto values = omm_values(f1, n);
        const auto prof = interval_profile(values, n, static_cast<std::size_t>(mu));
        REQUIRE(prof.defined());
        REQUIRE(std::accumulate(prof.gaps.begin(), prof.gaps.end(), std::int64_t{0}) == n);
        REQUIRE(prof.min_gap <= prof.max_gap);

        bool oracle = true;
        for (auto g : parts) oracle = oracle && (g == lo || g == hi);
        const bool optimal = is_optimal_spread(prof, n, static_cast<std::size_t>(mu));
        REQUIRE(optimal == oracle);
        if (mu <= n) {
          const auto ab = alpha_beta(n, mu);
          REQUIRE(optimal == (lex_key_min(prof) == LexKey{-ab.alpha, ab.beta}));
        }
        ++checked;
      });
    }
  CHECK(checked == 4095);  // sum over n <= 12 of 2^(n-1)
}
