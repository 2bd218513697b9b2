#include <doctest.h>

#include <random>

#include "sfree/core.hpp"

using namespace sfree;

TEST_CASE("parse_equation accepts comma-separated nonzero integers") {
  const auto sidon = parse_equation("1,1");
  CHECK(sidon.k() == 2);
  CHECK(sidon.norm1() == 2);
  CHECK(std::vector<std::int64_t>(sidon.coefficients().begin(), sidon.coefficients().end()) ==
        std::vector<std::int64_t>{1, 1});

  const auto ruzsa = parse_equation("1,2,2");
  CHECK(ruzsa.k() == 3);
  CHECK(ruzsa.norm1() == 5);

  CHECK(parse_equation("3,-5").norm1() == 8);
}

TEST_CASE("parse_equation rejects bad input") {
  CHECK_THROWS_AS(parse_equation("1,0,2"), ValidationError);
  CHECK_THROWS_AS(parse_equation("7"), ValidationError);
  CHECK_THROWS_AS(parse_equation("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_equation("1, 2"), ParseError);
  CHECK_THROWS_AS(parse_equation("1,x"), ParseError);
  CHECK_THROWS_AS(parse_equation("+1,2"), ParseError);
  CHECK_THROWS_AS(parse_equation(""), ParseError);
  CHECK_THROWS_AS(parse_equation("1,4294967296"), ValidationError);
}

TEST_CASE("full_coefficients appends the negated left side") {
  CHECK(full_coefficients(parse_equation("1,1")) == std::vector<std::int64_t>{1, 1, -1, -1});
  CHECK(full_coefficients(parse_equation("1,2,2")) == std::vector<std::int64_t>{1, 2, 2, -1, -2, -2});
  CHECK(full_coefficients(parse_equation("3,-5")) == std::vector<std::int64_t>{3, -5, -3, 5});
}

TEST_CASE("diagonal assignments always solve and round-trip holds") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 4);
    std::vector<std::int64_t> a;
    for (int i = 0; i < k; ++i) {
      auto v = static_cast<std::int64_t>(rng() % 19) - 9;
      a.push_back(v == 0 ? 1 : v);
    }
    const Equation eq(a);
    CHECK(parse_equation(eq.to_string()) == eq);
    std::vector<std::int64_t> x(2 * k);
    for (int i = 0; i < k; ++i) x[i] = x[k + i] = static_cast<std::int64_t>(rng() % 1000) + 1;
    CHECK(evaluate(eq, x) == 0);
  }
}

TEST_CASE("evaluate checks assignment length") {
  CHECK_THROWS_AS(evaluate(parse_equation("1,1"), std::vector<std::int64_t>{1, 2, 3}), ValidationError);
  CHECK(is_distinct_solution(parse_equation("1,1"), std::vector<std::int64_t>{1, 4, 2, 3}));
  CHECK_FALSE(is_distinct_solution(parse_equation("1,1"), std::vector<std::int64_t>{2, 2, 1, 3}));
}

TEST_CASE("make_set sorts, deduplicates, and validates range") {
  const auto s = make_set({3, 1, 2}, 10);
  CHECK(std::vector<std::int64_t>(s.begin(), s.end()) == std::vector<std::int64_t>{1, 2, 3});
  CHECK(s.domain_bound() == 10);
  CHECK(make_set({5, 5}, 5).size() == 1);
  CHECK_THROWS_AS(make_set({0}, 5), RangeError);
  CHECK_THROWS_AS(make_set({6}, 5), RangeError);
  CHECK_THROWS_AS(make_set({}, 0), ValidationError);
  CHECK(make_set({}, 3).empty());
}

TEST_CASE("make_set is idempotent") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> v;
    for (int i = 0; i < 30; ++i) v.push_back(static_cast<std::int64_t>(rng() % 50) + 1);
    const auto once = make_set(v, 50);
    const auto twice = make_set({once.begin(), once.end()}, 50);
    CHECK(once == twice);
  }
}

TEST_CASE("exact range precondition") {
  const auto eq = parse_equation("1,1");
  CHECK_NOTHROW(require_exact_range(make_set({1}, std::int64_t{1} << 30), eq));
  CHECK_THROWS_AS(require_exact_range(make_set({1}, (std::int64_t{1} << 30) + 1), eq), ValidationError);
}
