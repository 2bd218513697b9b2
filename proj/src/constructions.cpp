#include "sfree/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sfree/counting.hpp"

namespace sfree {
namespace {

void check_ruzsa_args(std::int64_t d, std::int64_t k) {
  if (d < 2) throw ValidationError("digit bound d must be >= 2, got " + std::to_string(d));
  if (k < 2) throw ValidationError("k must be >= 2, got " + std::to_string(k));
}

// Uniform in [0, n) by rejection; std distributions are not portable.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  while (true) {
    const std::uint64_t r = rng();
    if (r < limit) return r % n;
  }
}

}  // namespace

std::int64_t RuzsaParams::base() const {
  check_ruzsa_args(d, k);
  if (N < 1) throw ValidationError("N must be >= 1, got " + std::to_string(N));
  std::int64_t b = 0;
  if (__builtin_mul_overflow(d, d, &b) || __builtin_mul_overflow(b, k, &b)) {
    throw ValidationError("base d^2 k overflows 64 bits");
  }
  return b;
}

Equation ruzsa_equation(std::int64_t d, std::int64_t k) {
  check_ruzsa_args(d, k);
  std::vector<std::int64_t> a(static_cast<std::size_t>(k), d);
  a[0] = 1;
  return Equation(std::move(a));
}

IntegerSet ruzsa_digit_set(const RuzsaParams& params) {
  const std::int64_t base = params.base();
  const std::int64_t N = params.N;
  // Number of base-b digits needed to write N.
  int length = 0;
  for (std::int64_t v = N; v > 0; v /= base) ++length;

  std::vector<std::int64_t> out;
  // Digit strings of fixed width `length`, most significant first; padded
  // lexicographic order is numeric order.
  // place[p] = base^(length - 1 - p)
  std::vector<__int128> place(static_cast<std::size_t>(length), 1);
  for (int p = length - 2; p >= 0; --p) place[p] = place[p + 1] * base;
  auto recurse = [&](auto&& self, int pos, __int128 value) -> void {
    if (pos == length) {
      if (value >= 1) out.push_back(static_cast<std::int64_t>(value));
      return;
    }
    for (std::int64_t digit = 0; digit < params.d; ++digit) {
      const __int128 next = value + digit * place[pos];
      if (next > N) break;
      self(self, pos + 1, next);
    }
  };
  recurse(recurse, 0, 0);
  return make_set(std::move(out), N);
}

double predicted_exponent(std::int64_t d, std::int64_t k) {
  check_ruzsa_args(d, k);
  return std::log(static_cast<double>(d)) / std::log(static_cast<double>(d * d * k));
}

std::vector<std::int64_t> digits(std::int64_t value, std::int64_t base) {
  if (base < 2) throw ValidationError("base must be >= 2");
  std::vector<std::int64_t> out;
  for (; value > 0; value /= base) out.push_back(value % base);
  return out;
}

std::vector<std::int64_t> seeded_permutation(std::int64_t N, std::uint64_t seed) {
  std::vector<std::int64_t> perm(static_cast<std::size_t>(std::max<std::int64_t>(N, 0)));
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::int64_t>(i) + 1;
  std::mt19937_64 rng(seed);
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[bounded(rng, i)]);
  }
  return perm;
}

IntegerSet greedy_solution_free(std::int64_t N, const Equation& eq, const GreedyOrder& order) {
  if (N < 1) throw ValidationError("N must be >= 1, got " + std::to_string(N));
  std::vector<std::int64_t> candidates;
  if (std::holds_alternative<SeededShuffle>(order)) {
    candidates = seeded_permutation(N, std::get<SeededShuffle>(order).seed);
  } else {
    candidates.resize(static_cast<std::size_t>(N));
    std::iota(candidates.begin(), candidates.end(), std::int64_t{1});
  }
  std::vector<std::int64_t> chosen;  // kept sorted for membership lookups
  for (const auto x : candidates) {
    if (!find_distinct_solution_with(chosen, x, eq)) {
      chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), x), x);
    }
  }
  return make_set(std::move(chosen), N);
}

}  // namespace sfree
