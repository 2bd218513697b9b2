#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracle.hpp"
#include "sfree/counting.hpp"

using namespace sfree;

namespace {

oracle::Values values(const IntegerSet& s) { return {s.begin(), s.end()}; }

IntegerSet random_set(std::mt19937_64& rng, std::int64_t N, std::size_t max_size) {
  std::vector<std::int64_t> v;
  const std::size_t target = 1 + rng() % max_size;
  while (v.size() < target) v.push_back(1 + static_cast<std::int64_t>(rng() % N));
  return make_set(v, N);
}

}  // namespace

TEST_CASE("energy examples") {
  CHECK(count_all_solutions(make_set({1, 2, 3}, 3), parse_equation("1,1")) == 19);
  CHECK(count_all_solutions(make_set({1, 2}, 2), parse_equation("1,1,1")) == 20);
  CHECK(count_all_solutions(make_set({1, 2, 5, 7}, 7), parse_equation("1,1")) == 28);
  CHECK(count_all_solutions(make_set({1, 2, 3, 4, 5}, 5), parse_equation("1,1")) == 85);
}

TEST_CASE("coincidence examples") {
  const auto A = make_set({1, 2, 3}, 3);
  const auto eq = parse_equation("1,1");
  CHECK(count_coincident(A, eq, 1, 2) == 5);
  CHECK(count_coincident(make_set({1, 2, 5, 7}, 7), eq, 1, 2) == 4);
  CHECK(count_coincident(make_set({1, 2, 5, 7}, 7), eq, 1, 3) == 16);
  CHECK_THROWS_AS(count_coincident(A, eq, 2, 2), RangeError);
  CHECK_THROWS_AS(count_coincident(A, eq, 0, 1), RangeError);
  CHECK_THROWS_AS(count_coincident(A, eq, 1, 5), RangeError);
}

TEST_CASE("distinct-solution examples") {
  const auto e11 = parse_equation("1,1");
  const auto e111 = parse_equation("1,1,1");
  for (auto method : {DistinctMethod::enumerate, DistinctMethod::inclusion_exclusion}) {
    CHECK(count_distinct_solutions(make_set({1, 2, 3, 4}, 4), e11, method) == 8);
    CHECK(count_distinct_solutions(make_set({1, 2, 3, 4, 5, 7}, 7), e111, method) == 72);
    CHECK(count_distinct_solutions(make_set({1, 2, 3, 4, 5, 6}, 6), e111, method) == 0);
    CHECK(count_distinct_solutions(make_set({1, 2, 5, 7}, 7), e11, method) == 0);
  }
  CHECK(is_solution_free(make_set({1, 2, 5, 7}, 7), e11));
  CHECK_FALSE(is_solution_free(make_set({1, 2, 3, 4}, 4), e11));
}

TEST_CASE("counts match the brute-force oracle") {
  std::mt19937_64 rng(11);
  for (const char* text : {"1,1", "1,2", "1,1,1", "1,2,2", "2,3,5"}) {
    const auto eq = parse_equation(text);
    const std::size_t max_size = eq.k() == 2 ? 7 : 5;
    for (int trial = 0; trial < 25; ++trial) {
      const auto A = random_set(rng, 12, max_size);
      CAPTURE(text);
      CAPTURE(to_string(A));
      const auto expected = oracle::count(values(A), {eq.coefficients().begin(), eq.coefficients().end()});
      const auto report = solution_report(A, eq);
      CHECK(report.total == expected.all);
      CHECK(report.distinct == expected.distinct);
      CHECK(report.coincident == expected.coincident);
      CHECK(count_distinct_solutions(A, eq, DistinctMethod::enumerate) == expected.distinct);
      CHECK(is_solution_free(A, eq) == (expected.distinct == 0));
    }
  }
}

TEST_CASE("rep function matches the oracle in every convolution mode") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<IntegerSet> sets;
    std::vector<std::int64_t> coeffs;
    std::vector<oracle::Values> raw;
    for (std::size_t i = 0; i < n; ++i) {
      sets.push_back(random_set(rng, 30, 8));
      raw.push_back(values(sets.back()));
      std::int64_t c = 1 + static_cast<std::int64_t>(rng() % 4);
      if (rng() & 1) c = -c;
      coeffs.push_back(c);
    }
    const auto expected = oracle::rep(raw, coeffs);
    for (auto mode : {ConvolutionMode::automatic, ConvolutionMode::dense, ConvolutionMode::sparse}) {
      const auto r = rep_function(sets, coeffs, mode);
      CHECK(r.to_map() == expected);
      std::uint64_t total = 1;
      for (const auto& s : sets) total *= s.size();
      CHECK(r.total() == total);
      CHECK(r.support_size() <= total);
    }
  }
}

TEST_CASE("rep function validation") {
  const auto A = make_set({1, 2}, 2);
  const std::vector<IntegerSet> sets{A};
  const std::vector<std::int64_t> two{1, 2};
  const std::vector<std::int64_t> zero{0};
  CHECK_THROWS_AS(rep_function(sets, two), ValidationError);
  CHECK_THROWS_AS(rep_function(sets, zero), ValidationError);
  CHECK_THROWS_AS(rep_function(std::span<const WeightedSet>{}), ValidationError);
}

TEST_CASE("count_zero_sum treats zero coefficients as free") {
  const std::vector<std::int64_t> A{1, 2, 3};
  const std::vector<std::int64_t> with_zero{1, 0, -1};
  const std::vector<std::int64_t> without{1, -1};
  CHECK(count_zero_sum(A, with_zero) == 3 * count_zero_sum(A, without));
  CHECK(count_zero_sum(A, without) == 3);
}

TEST_CASE("structural properties") {
  std::mt19937_64 rng(13);
  const auto eq = parse_equation("1,2,2");
  for (int trial = 0; trial < 20; ++trial) {
    const auto A = random_set(rng, 20, 8);
    const auto report = solution_report(A, eq);
    // Every non-distinct solution has at least one coincident pair.
    std::uint64_t coincident_sum = 0;
    for (const auto& [ij, count] : report.coincident) coincident_sum += count;
    CHECK(report.total - report.distinct <= coincident_sum);
    // Swapping the two sides maps solutions onto solutions.
    const int k = eq.k();
    for (int i = 1; i <= 2 * k; ++i)
      for (int j = i + 1; j <= 2 * k; ++j) {
        const int si = i <= k ? i + k : i - k;
        const int sj = j <= k ? j + k : j - k;
        CHECK(report.coincident.at({i, j}) == report.coincident.at({std::min(si, sj), std::max(si, sj)}));
      }
    // The diagonal x_i = x_{k+i} always solves it.
    CHECK(report.total >= static_cast<std::uint64_t>(std::pow(A.size(), k)));
  }
}

TEST_CASE("enumeration budget raises ResourceError") {
  std::vector<std::int64_t> v;
  for (std::int64_t i = 1; i <= 30; ++i) v.push_back(i);
  const auto A = make_set(v, 30);
  CHECK_THROWS_AS(count_distinct_solutions(A, parse_equation("1,1,1"), DistinctMethod::enumerate, 100),
                  ResourceError);
}

TEST_CASE("find_distinct_solution returns a valid witness") {
  const auto eq = parse_equation("1,1,1");
  const std::vector<std::int64_t> A{1, 2, 3, 4, 5, 7};
  const auto sol = find_distinct_solution(A, eq);
  REQUIRE(sol.has_value());
  CHECK(is_distinct_solution(eq, *sol));

  const std::vector<std::int64_t> rest{1, 2, 3, 4, 5};
  const auto through = find_distinct_solution_with(rest, 7, eq);
  REQUIRE(through.has_value());
  CHECK(is_distinct_solution(eq, *through));
  CHECK(std::find(through->begin(), through->end(), 7) != through->end());

  const std::vector<std::int64_t> sidon{1, 2, 5};
  CHECK_FALSE(find_distinct_solution_with(sidon, 7, parse_equation("1,1")).has_value());
}

TEST_CASE("set partitions follow the Bell numbers") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (int n = 1; n <= 6; ++n) CHECK(set_partitions(n).size() == bell[n]);
}
