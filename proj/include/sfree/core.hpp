#pragma once

// Shared value types: the symmetric equation, bounded integer sets, and the
// error hierarchy every module throws from.

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sfree {

// Errors map one-to-one onto CLI exit codes (see tools/sfree_cli.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Work budget exhausted or an exact count would not fit in 64 bits.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A checked theorem or internal invariant failed; always a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// The symmetric equation a1*x1 + ... + ak*xk = a1*x(k+1) + ... + ak*x(2k).
///
/// Only the left-hand coefficient vector is stored; the right-hand side is
/// implied, so the rewritten form sum c_i x_i = 0 always has c_{k+i} = -a_i.
class Equation {
 public:
  static constexpr std::int64_t kMaxCoefficient = std::numeric_limits<std::int32_t>::max();

  /// Throws ValidationError on fewer than two coefficients, a zero entry, or
  /// a magnitude beyond 32-bit signed range.
  explicit Equation(std::vector<std::int64_t> coefficients);

  int k() const { return static_cast<int>(coefficients_.size()); }
  int variables() const { return 2 * k(); }
  std::span<const std::int64_t> coefficients() const { return coefficients_; }
  std::int64_t norm1() const { return norm1_; }

  /// (a1, ..., ak, -a1, ..., -ak)
  std::vector<std::int64_t> full_coefficients() const;

  /// Canonical text form: comma-separated decimals, no spaces.
  std::string to_string() const;

  bool operator==(const Equation&) const = default;

 private:
  std::vector<std::int64_t> coefficients_;
  std::int64_t norm1_ = 0;
};

/// Parses `int ("," int)+`. Malformed tokens raise ParseError; zero or too
/// few coefficients raise ValidationError.
Equation parse_equation(std::string_view text);

inline std::vector<std::int64_t> full_coefficients(const Equation& eq) {
  return eq.full_coefficients();
}

/// sum c_i x_i over the rewritten coefficients; zero iff the assignment
/// solves the equation. Throws ValidationError when the length is not 2k.
std::int64_t evaluate(const Equation& eq, std::span<const std::int64_t> assignment);

/// True when the assignment solves the equation and its 2k values are
/// pairwise different.
bool is_distinct_solution(const Equation& eq, std::span<const std::int64_t> assignment);

/// A finite set of distinct integers inside [1, N], stored sorted.
class IntegerSet {
 public:
  IntegerSet() = default;

  std::span<const std::int64_t> elements() const { return elements_; }
  std::int64_t domain_bound() const { return domain_bound_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(std::int64_t value) const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool operator==(const IntegerSet&) const = default;

 private:
  friend IntegerSet make_set(std::vector<std::int64_t> values, std::int64_t domain_bound);
  std::vector<std::int64_t> elements_;
  std::int64_t domain_bound_ = 1;
};

/// Sorts and deduplicates. Throws RangeError when an element falls outside
/// [1, domain_bound], ValidationError when domain_bound < 1.
IntegerSet make_set(std::vector<std::int64_t> values, std::int64_t domain_bound);

/// Same set, new domain bound (must still cover every element).
IntegerSet with_domain(const IntegerSet& set, std::int64_t domain_bound);

std::string to_string(const IntegerSet& set);

/// Sums over the set are exact in 64-bit arithmetic as long as
/// N * norm1 <= 2^31. Counting operations enforce this through here.
void require_exact_range(const IntegerSet& set, const Equation& eq);

}  // namespace sfree
