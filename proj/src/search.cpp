#include "sfree/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <string>

#include "sfree/constructions.hpp"

namespace sfree {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// Fixed-width bit vector over vertex ranks.
class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  std::size_t first() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return npos;
  }

  // Count of bits in *this that are clear in `mask`, and the last such bit.
  std::size_t count_outside(const Bits& mask, std::size_t& last) const {
    std::size_t count = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const std::uint64_t rest = words_[w] & ~mask.words_[w];
      if (rest != 0) {
        count += static_cast<std::size_t>(std::popcount(rest));
        last = w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(rest));
      }
    }
    return count;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::uint64_t> words_;
};

struct BudgetExhausted {};

class BranchAndBound {
 public:
  BranchAndBound(const SolutionHypergraph& graph, std::uint64_t budget,
                 std::optional<std::int64_t> cap)
      : graph_(graph), budget_(budget), cap_(cap) {
    const auto n = static_cast<std::size_t>(graph.N);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::int64_t{1});
    std::stable_sort(order_.begin(), order_.end(), [&](std::int64_t a, std::int64_t b) {
      return graph.degree(a) > graph.degree(b);
    });
    rank_.assign(n + 1, 0);
    for (std::size_t r = 0; r < n; ++r) rank_[static_cast<std::size_t>(order_[r])] = r;
    edges_.reserve(graph.edges.size());
    for (const auto& edge : graph.edges) {
      Bits bits(n);
      for (const auto v : edge) bits.set(rank_[static_cast<std::size_t>(v)]);
      edges_.push_back(std::move(bits));
    }
  }

  // Returns true when the search ran to completion (or hit the cap).
  bool run(std::int64_t incumbent_size) {
    best_size_ = incumbent_size;
    const auto n = static_cast<std::size_t>(graph_.N);
    Bits chosen(n);
    Bits candidates(n);
    for (std::size_t r = 0; r < n; ++r) candidates.set(r);
    std::vector<std::size_t> stack;
    try {
      branch(chosen, stack, candidates, n);
    } catch (const BudgetExhausted&) {
      return false;
    }
    return true;
  }

  std::int64_t best_size() const { return best_size_; }
  const std::vector<std::int64_t>& best_witness() const { return best_witness_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool capped() const { return cap_ && best_size_ >= *cap_; }

  void branch(Bits& chosen, std::vector<std::size_t>& stack, Bits candidates,
              std::size_t candidate_count) {
    while (true) {
      if (++nodes_ > budget_) throw BudgetExhausted{};
      const auto size = static_cast<std::int64_t>(stack.size());
      if (size > best_size_) {
        best_size_ = size;
        best_witness_.clear();
        for (const auto r : stack) best_witness_.push_back(order_[r]);
        std::sort(best_witness_.begin(), best_witness_.end());
      }
      if (capped()) return;
      if (size + static_cast<std::int64_t>(candidate_count) <= best_size_) return;

      const std::size_t v = candidates.first();
      candidates.reset(v);
      --candidate_count;

      // Include v: any vertex completing an edge with the chosen ones is out.
      Bits included = candidates;
      std::size_t included_count = candidate_count;
      chosen.set(v);
      for (const auto e : graph_.incidence[static_cast<std::size_t>(order_[v] - 1)]) {
        std::size_t last = 0;
        if (edges_[e].count_outside(chosen, last) == 1 && included.test(last)) {
          included.reset(last);
          --included_count;
        }
      }
      stack.push_back(v);
      branch(chosen, stack, included, included_count);
      stack.pop_back();
      chosen.reset(v);
      if (capped()) return;
      // Exclude v: continue with the reduced candidate set.
    }
  }

  const SolutionHypergraph& graph_;
  std::uint64_t budget_;
  std::optional<std::int64_t> cap_;
  std::vector<std::int64_t> order_;
  std::vector<std::size_t> rank_;
  std::vector<Bits> edges_;
  std::int64_t best_size_ = 0;
  std::vector<std::int64_t> best_witness_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SolutionHypergraph build_hypergraph(std::int64_t N, const Equation& eq, std::uint64_t budget) {
  if (N < 1) throw ValidationError("N must be >= 1, got " + std::to_string(N));
  SolutionHypergraph graph;
  graph.N = N;
  graph.k = eq.k();
  graph.incidence.resize(static_cast<std::size_t>(N));
  const int width = eq.variables();
  if (N < width) return graph;

  std::vector<std::int64_t> subset(static_cast<std::size_t>(width));
  std::iota(subset.begin(), subset.end(), std::int64_t{1});
  std::uint64_t spent = 0;
  while (true) {
    if (spent >= budget) {
      throw ResourceError("hypergraph budget of " + std::to_string(budget) + " subsets exceeded");
    }
    ++spent;
    // A solution on 2k distinct values from a 2k-set uses every value.
    if (find_distinct_solution(subset, eq)) {
      const std::size_t index = graph.edges.size();
      graph.edges.push_back(subset);
      for (const auto v : subset) graph.incidence[static_cast<std::size_t>(v - 1)].push_back(index);
    }
    // Next combination in lexicographic order.
    int pos = width - 1;
    while (pos >= 0 && subset[pos] == N - (width - 1 - pos)) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int t = pos + 1; t < width; ++t) subset[t] = subset[t - 1] + 1;
  }
  return graph;
}

SearchResult exact_max_solution_free(std::int64_t N, const Equation& eq,
                                     const ExactOptions& options) {
  const auto start = Clock::now();
  SearchResult result;
  IntegerSet incumbent = options.incumbent ? with_domain(*options.incumbent, N)
                                           : greedy_solution_free(N, eq, Ascending{});
  if (!is_solution_free(incumbent, eq)) {
    throw ValidationError("incumbent set " + to_string(incumbent) + " is not solution-free");
  }

  SolutionHypergraph graph;
  try {
    graph = build_hypergraph(N, eq, options.budget);
  } catch (const ResourceError&) {
    result.size = static_cast<std::int64_t>(incumbent.size());
    result.witness = incumbent;
    result.exact = false;
    result.time_ms = elapsed_ms(start);
    return result;
  }

  BranchAndBound bnb(graph, options.budget, options.proven_upper);
  const bool complete = bnb.run(static_cast<std::int64_t>(incumbent.size()));
  result.exact = complete;
  result.nodes_explored = bnb.nodes();
  if (bnb.best_size() > static_cast<std::int64_t>(incumbent.size())) {
    result.witness = make_set(bnb.best_witness(), N);
  } else {
    result.witness = incumbent;
  }
  result.size = static_cast<std::int64_t>(result.witness.size());
  result.time_ms = elapsed_ms(start);
  return result;
}

SearchResult random_restarts(std::int64_t N, const Equation& eq, int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("trials must be >= 1, got " + std::to_string(trials));
  const auto start = Clock::now();
  SearchResult result;
  for (int t = 0; t < trials; ++t) {
    // Trial t uses seed + t so single trials can be replayed.
    auto set = greedy_solution_free(N, eq, SeededShuffle{seed + static_cast<std::uint64_t>(t)});
    ++result.nodes_explored;
    if (t == 0 || set.size() > result.witness.size()) result.witness = std::move(set);
  }
  result.size = static_cast<std::int64_t>(result.witness.size());
  result.exact = false;
  result.time_ms = elapsed_ms(start);
  return result;
}

double EnergyBoundReport::lower() const {
  return lower_numerator.convert_to<double>() / lower_denominator.convert_to<double>();
}

EnergyBoundReport check_energy_bounds(const IntegerSet& set, const Equation& eq) {
  if (set.empty()) throw ValidationError("energy bounds need a nonempty set");
  EnergyBoundReport report;
  report.energy = count_all_solutions(set, eq);
  report.M = set.size();
  report.N = set.domain_bound();
  report.norm1 = eq.norm1();
  report.k = eq.k();
  const auto k2 = static_cast<unsigned>(2 * eq.k());
  const BigInt M = report.M;
  report.lower_numerator = big_pow(M, k2);
  report.lower_denominator = BigInt(report.norm1) * report.N;
  report.upper = binomial(k2, 2) * big_pow(M, k2 - 2);
  report.lower_holds = BigInt(report.energy) * report.lower_denominator >= report.lower_numerator;
  report.solution_free = is_solution_free(set, eq);
  report.upper_applicable = report.solution_free;
  report.upper_holds = BigInt(report.energy) <= report.upper;
  return report;
}

}  // namespace sfree
