#pragma once

// Representation functions, additive energies, and solution counts for the
// symmetric equation over a single set.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sfree/core.hpp"

namespace sfree {

/// One term coeff * v with v ranging over `elements`.
struct WeightedSet {
  std::span<const std::int64_t> elements;
  std::int64_t coeff = 1;
};

inline WeightedSet weighted(const IntegerSet& set, std::int64_t coeff) {
  return {set.elements(), coeff};
}

enum class ConvolutionMode { automatic, dense, sparse };

/// r(m) = #{(v_1..v_j) : sum c_i v_i = m}, stored sparsely over attained m.
class RepFunction {
 public:
  using Entry = std::pair<std::int64_t, std::uint64_t>;

  RepFunction() = default;
  RepFunction(std::vector<Entry> entries, std::uint64_t total)
      : entries_(std::move(entries)), total_(total) {}

  std::uint64_t at(std::int64_t m) const;
  std::span<const Entry> entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  std::uint64_t total() const { return total_; }
  std::map<std::int64_t, std::uint64_t> to_map() const;

 private:
  std::vector<Entry> entries_;  // sorted by m, counts >= 1
  std::uint64_t total_ = 0;
};

/// Iterated convolution over the dilated sets. Dense arrays are used once
/// the attainable range is at least 1/8 populated (or when forced).
/// Throws ValidationError on an empty list or zero coefficient, and
/// ResourceError when the tuple count overflows 64 bits.
RepFunction rep_function(std::span<const WeightedSet> terms,
                         ConvolutionMode mode = ConvolutionMode::automatic);
RepFunction rep_function(std::span<const IntegerSet> sets, std::span<const std::int64_t> coeffs,
                         ConvolutionMode mode = ConvolutionMode::automatic);

/// sum_m r_lhs(m) r_rhs(m): the number of solutions of sum lhs = sum rhs.
std::uint64_t energy(std::span<const WeightedSet> lhs, std::span<const WeightedSet> rhs,
                     ConvolutionMode mode = ConvolutionMode::automatic);

/// Number of tuples over `elements`^n with sum coeffs[i] y_i = 0. A zero
/// coefficient leaves its variable free.
std::uint64_t count_zero_sum(std::span<const std::int64_t> elements,
                             std::span<const std::int64_t> coeffs);

/// E: ordered 2k-tuples over A solving the equation.
std::uint64_t count_all_solutions(const IntegerSet& set, const Equation& eq);

/// T_{i,j}: solutions with x_i = x_j, 1-based indices, 1 <= i < j <= 2k.
std::uint64_t count_coincident(const IntegerSet& set, const Equation& eq, int i, int j);

enum class DistinctMethod { enumerate, inclusion_exclusion };

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

/// Solutions whose 2k values are pairwise different. The enumerate method
/// throws ResourceError once `budget` tuple extensions are spent.
std::uint64_t count_distinct_solutions(const IntegerSet& set, const Equation& eq,
                                       DistinctMethod method = DistinctMethod::inclusion_exclusion,
                                       std::uint64_t budget = kDefaultBudget);

/// First distinct-valued solution in depth-first order, if any.
std::optional<std::vector<std::int64_t>> find_distinct_solution(
    std::span<const std::int64_t> elements, const Equation& eq,
    std::uint64_t budget = kDefaultBudget);

/// Distinct-valued solution over elements + {value} that uses `value`.
/// `value` must not already be in `elements`.
std::optional<std::vector<std::int64_t>> find_distinct_solution_with(
    std::span<const std::int64_t> elements, std::int64_t value, const Equation& eq,
    std::uint64_t budget = kDefaultBudget);

bool is_solution_free(const IntegerSet& set, const Equation& eq,
                      std::uint64_t budget = kDefaultBudget);

struct SolutionReport {
  std::uint64_t total = 0;     // E
  std::uint64_t distinct = 0;  // all 2k values different
  // T_{i,j} keyed by 1-based (i, j), i < j.
  std::map<std::pair<int, int>, std::uint64_t> coincident;
};

SolutionReport solution_report(const IntegerSet& set, const Equation& eq);

/// All set partitions of {0..n-1} as restricted growth strings.
std::vector<std::vector<int>> set_partitions(int n);

}  // namespace sfree
