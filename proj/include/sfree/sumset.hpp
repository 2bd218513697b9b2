#pragma once

// Set arithmetic over arbitrary integers (sumsets, difference sets, dilates,
// sums of dilates) and exact checkers for the classical cardinality
// inequalities: Ruzsa's triangle inequality, Pluennecke's inequality, and the
// Cauchy-Schwarz lower bound on energy.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sfree/core.hpp"
#include "sfree/numeric.hpp"

namespace sfree {

/// Sorted distinct integers, no range restriction.
class FiniteSet {
 public:
  FiniteSet() = default;
  FiniteSet(std::initializer_list<std::int64_t> values) : FiniteSet(std::vector<std::int64_t>(values)) {}
  explicit FiniteSet(std::vector<std::int64_t> values);
  explicit FiniteSet(const IntegerSet& set) : elements_(set.begin(), set.end()) {}

  std::span<const std::int64_t> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(std::int64_t value) const;
  std::int64_t min() const { return elements_.front(); }
  std::int64_t max() const { return elements_.back(); }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool operator==(const FiniteSet&) const = default;

 private:
  std::vector<std::int64_t> elements_;
};

std::string to_string(const FiniteSet& set);
bool is_subset(const FiniteSet& inner, const FiniteSet& outer);

/// Positive dilation factors (s_1, ..., s_l).
class DilateSpec {
 public:
  /// Throws ValidationError on an empty list or a factor < 1.
  explicit DilateSpec(std::vector<std::int64_t> factors);

  std::span<const std::int64_t> factors() const { return factors_; }
  std::size_t length() const { return factors_.size(); }
  std::int64_t norm1() const { return norm1_; }

 private:
  std::vector<std::int64_t> factors_;
  std::int64_t norm1_ = 0;
};

enum class SumsetMethod { automatic, bitset, merge };

/// {a + b}. Bit-vector shift-OR when the result span is <= 2^20, otherwise
/// sorted pair merging. Empty operands give the empty set.
FiniteSet sumset(const FiniteSet& a, const FiniteSet& b, SumsetMethod method = SumsetMethod::automatic);
FiniteSet difference(const FiniteSet& a, const FiniteSet& b);
/// {c * a}; c may be any nonzero integer.
FiniteSet scale(std::int64_t c, const FiniteSet& a);
/// t . A for t >= 1.
FiniteSet dilate(std::int64_t t, const FiniteSet& a);
/// kB = B + ... + B (k copies), k >= 1.
FiniteSet iterated_sumset(std::int64_t k, const FiniteSet& b);
/// s_1 . A + ... + s_l . A, folded left to right.
FiniteSet sum_of_dilates(const DilateSpec& spec, const FiniteSet& a);

struct TriangleCheck {
  BigInt lhs;  // |A-C| |B|
  BigInt rhs;  // |A-B| |B-C|
  bool holds = false;
};

/// |A-C| |B| <= |A-B| |B-C|. B must be nonempty.
TriangleCheck ruzsa_triangle_check(const FiniteSet& a, const FiniteSet& b, const FiniteSet& c);

struct PlunneckeCheck {
  std::uint64_t k_numerator = 0;    // |A+B|
  std::uint64_t k_denominator = 0;  // |A|, so K = |A+B| / |A|
  BigInt lhs;                       // |kB| |A|^k
  BigInt bound;                     // |A+B|^k |A|
  bool holds = false;
};

/// |kB| <= K^k |A| with K = |A+B|/|A|, cross-multiplied.
PlunneckeCheck plunnecke_check(const FiniteSet& a, const FiniteSet& b, std::int64_t k);

struct CauchySchwarzCheck {
  std::uint64_t energy = 0;
  BigInt product_sq;  // (prod |A_i|)^2
  std::uint64_t sumset_size = 0;
  bool holds = false;
};

/// E(c_i A_i) |sum c_i A_i| >= (prod |A_i|)^2.
CauchySchwarzCheck cs_energy_lower_check(std::span<const std::pair<FiniteSet, std::int64_t>> sets);

struct Rational {
  BigInt numerator;
  BigInt denominator;

  double value() const;
  std::string to_string() const;  // reduced "p/q"
};

struct DilateEnergySurvey {
  std::uint64_t n = 0;
  std::uint64_t energy_t = 0;
  std::uint64_t energy_s = 0;
  Rational normalized_t;  // E_t / n^(2k-1)
  Rational normalized_s;  // E_s / n^(2l-1)
};

/// Energies of the t- and s-dilate systems over A, normalized. Collects data
/// only; asserts no relation between them.
DilateEnergySurvey dilate_energy_survey(const FiniteSet& a, const DilateSpec& t_spec,
                                        const DilateSpec& s_spec);

}  // namespace sfree
