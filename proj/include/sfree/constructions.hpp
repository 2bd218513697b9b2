#pragma once

// Explicit solution-free sets: the base-(d^2 k) digit construction paired
// with x1 + d(x2+..+xk) = x(k+1) + d(x(k+2)+..+x(2k)), and greedy baselines.

#include <cstdint>
#include <variant>
#include <vector>

#include "sfree/core.hpp"

namespace sfree {

struct RuzsaParams {
  std::int64_t d = 2;
  std::int64_t k = 2;
  std::int64_t N = 1;

  /// d^2 k. Throws ValidationError on d < 2, k < 2, N < 1 or overflow.
  std::int64_t base() const;
};

/// (1, d, ..., d) with k-1 copies of d.
Equation ruzsa_equation(std::int64_t d, std::int64_t k);

/// Every n in [1, N] whose base-(d^2 k) digits all lie in {0..d-1}, built by
/// enumerating digit strings most-significant first (already sorted).
IntegerSet ruzsa_digit_set(const RuzsaParams& params);

/// Growth exponent log d / log(d^2 k) of the digit set.
double predicted_exponent(std::int64_t d, std::int64_t k);

/// Base-b digits of `value`, least significant first.
std::vector<std::int64_t> digits(std::int64_t value, std::int64_t base);

struct Ascending {};
struct SeededShuffle {
  std::uint64_t seed = 0;
};
using GreedyOrder = std::variant<Ascending, SeededShuffle>;

/// Permutation of [1, N] drawn deterministically from `seed`; identical on
/// every platform (no std::shuffle / std::uniform_int_distribution).
std::vector<std::int64_t> seeded_permutation(std::int64_t N, std::uint64_t seed);

/// Scans candidates in order, keeping x whenever no distinct-valued solution
/// through x appears. The result is maximal.
IntegerSet greedy_solution_free(std::int64_t N, const Equation& eq, const GreedyOrder& order);

}  // namespace sfree
