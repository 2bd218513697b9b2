#pragma once

// R(N): the largest subset of [1, N] with no distinct-valued solution, found
// as the independence number of the 2k-uniform solution hypergraph.

#include <cstdint>
#include <optional>
#include <vector>

#include "sfree/core.hpp"
#include "sfree/counting.hpp"
#include "sfree/numeric.hpp"

namespace sfree {

struct SolutionHypergraph {
  std::int64_t N = 0;
  int k = 0;
  // Each edge: 2k distinct vertices in [1, N], sorted; edges in lexicographic order.
  std::vector<std::vector<std::int64_t>> edges;
  // incidence[v - 1] = indices into `edges` of edges containing v.
  std::vector<std::vector<std::size_t>> incidence;

  std::size_t degree(std::int64_t v) const { return incidence[static_cast<std::size_t>(v - 1)].size(); }
};

/// Enumerates every 2k-subset of [1, N] and keeps those with a solving
/// ordering. Throws ResourceError once more than `budget` subsets are examined.
SolutionHypergraph build_hypergraph(std::int64_t N, const Equation& eq,
                                    std::uint64_t budget = kDefaultBudget);

struct SearchResult {
  std::int64_t size = 0;
  IntegerSet witness;
  bool exact = false;
  std::uint64_t nodes_explored = 0;
  std::int64_t time_ms = 0;
};

struct ExactOptions {
  std::uint64_t budget = kDefaultBudget;
  // A known solution-free set; the search only reports strictly larger ones.
  std::optional<IntegerSet> incumbent;
  // A proven upper bound on R(N) (for example R(N-1) + 1). Reaching it ends
  // the search with an exact result.
  std::optional<std::int64_t> proven_upper;
};

/// Branch-and-bound over vertices in descending-degree order (ties: smaller
/// first). On budget exhaustion returns the best set found with exact=false.
SearchResult exact_max_solution_free(std::int64_t N, const Equation& eq,
                                     const ExactOptions& options = {});

/// Best of `trials` greedy scans under seeded shuffles; exact=false.
SearchResult random_restarts(std::int64_t N, const Equation& eq, int trials, std::uint64_t seed);

struct EnergyBoundReport {
  std::uint64_t energy = 0;
  std::uint64_t M = 0;
  std::int64_t N = 0;
  std::int64_t norm1 = 0;
  int k = 0;
  BigInt lower_numerator;    // M^(2k)
  BigInt lower_denominator;  // norm1 * N
  BigInt upper;              // C(2k,2) * M^(2k-2)
  bool lower_holds = false;
  bool solution_free = false;
  bool upper_applicable = false;  // only for solution-free sets
  bool upper_holds = false;

  double lower() const;
};

/// E against M^(2k)/(norm1 N) and, for solution-free A, C(2k,2) M^(2k-2).
EnergyBoundReport check_energy_bounds(const IntegerSet& set, const Equation& eq);

}  // namespace sfree
