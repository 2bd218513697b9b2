#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "sfree/constructions.hpp"
#include "sfree/counting.hpp"

using namespace sfree;

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("digit set examples") {
  const auto small = ruzsa_digit_set({2, 3, 144});
  CHECK(std::vector<std::int64_t>(small.begin(), small.end()) == std::vector<std::int64_t>{1, 12, 13, 144});
  const auto cube = ruzsa_digit_set({2, 3, 1728});
  CHECK(std::vector<std::int64_t>(cube.begin(), cube.end()) ==
        std::vector<std::int64_t>{1, 12, 13, 144, 145, 156, 157, 1728});
  CHECK(ruzsa_digit_set({2, 3, 11}).size() == 1);
  CHECK(cube.domain_bound() == 1728);
  CHECK(predicted_exponent(2, 3) == doctest::Approx(std::log(2.0) / std::log(12.0)));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ruzsa_digit_set({1, 3, 10}), ValidationError);
  CHECK_THROWS_AS(ruzsa_digit_set({2, 1, 10}), ValidationError);
  CHECK_THROWS_AS(ruzsa_digit_set({2, 3, 0}), ValidationError);
  CHECK_THROWS_AS((RuzsaParams{std::int64_t{1} << 40, 2, 10}.base()), ValidationError);
  CHECK(ruzsa_equation(3, 3) == parse_equation("1,3,3"));
}

TEST_CASE("digit sets are solution-free and carry-free") {
  for (std::int64_t d : {2, 3}) {
    for (std::int64_t k : {2, 3}) {
      const std::int64_t b = RuzsaParams{d, k, 1}.base();
      for (int t = 1; t <= 2; ++t) {
        const std::int64_t N = ipow(b, t);
        const auto A = ruzsa_digit_set({d, k, N});
        CAPTURE(d);
        CAPTURE(k);
        CAPTURE(N);
        CHECK(A.size() == static_cast<std::size_t>(ipow(d, t)));
        for (const auto a : A)
          for (const auto digit : digits(a, b)) CHECK(digit < d);
        CHECK(is_solution_free(A, ruzsa_equation(d, k)));
      }
    }
  }
}

TEST_CASE("digit set matches a direct scan") {
  const std::int64_t b = 12;
  std::vector<std::int64_t> scan;
  for (std::int64_t n = 1; n <= 5000; ++n) {
    bool ok = true;
    for (const auto digit : digits(n, b)) ok = ok && digit < 2;
    if (ok) scan.push_back(n);
  }
  const auto A = ruzsa_digit_set({2, 3, 5000});
  CHECK(std::vector<std::int64_t>(A.begin(), A.end()) == scan);
}

TEST_CASE("digits") {
  CHECK(digits(0, 10).empty());
  CHECK(digits(1728, 12) == std::vector<std::int64_t>{0, 0, 0, 1});
  CHECK(digits(157, 12) == std::vector<std::int64_t>{1, 1, 1});
}

TEST_CASE("greedy examples") {
  const auto A = greedy_solution_free(7, parse_equation("1,1"), Ascending{});
  CHECK(std::vector<std::int64_t>(A.begin(), A.end()) == std::vector<std::int64_t>{1, 2, 3, 5});
}

TEST_CASE("greedy sets are solution-free and maximal") {
  for (const char* text : {"1,1", "1,1,1", "1,2,2"}) {
    const auto eq = parse_equation(text);
    const oracle::Values a(eq.coefficients().begin(), eq.coefficients().end());
    for (std::uint64_t seed : {0u, 1u, 7u}) {
      const std::int64_t N = 16;
      const auto A = greedy_solution_free(N, eq, SeededShuffle{seed});
      const oracle::Values S(A.begin(), A.end());
      CAPTURE(text);
      CAPTURE(seed);
      CHECK_FALSE(oracle::has_distinct_solution(S, a));
      for (std::int64_t x = 1; x <= N; ++x) {
        if (A.contains(x)) continue;
        oracle::Values grown = S;
        grown.push_back(x);
        CHECK(oracle::has_distinct_solution(grown, a));
      }
    }
  }
}

TEST_CASE("seeded permutations are deterministic") {
  const auto p = seeded_permutation(50, 42);
  CHECK(p == seeded_permutation(50, 42));
  CHECK(p != seeded_permutation(50, 43));
  auto sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::int64_t i = 0; i < 50; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i + 1);
  const auto eq = parse_equation("1,1,1");
  CHECK(greedy_solution_free(30, eq, SeededShuffle{5}) == greedy_solution_free(30, eq, SeededShuffle{5}));
}
