#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace sfree {

/// Exact integers for cross-multiplied inequality checks.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline BigInt binomial(unsigned n, unsigned r) {
  BigInt out = 1;
  for (unsigned i = 0; i < r; ++i) out = out * (n - i) / (i + 1);
  return out;
}

}  // namespace sfree
