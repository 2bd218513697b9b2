#include "sfree/counting.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "sfree/kernels.hpp"

namespace sfree {
namespace {

using Entry = RepFunction::Entry;

// Dense arrays above this many counters fall back to sparse merging.
constexpr std::int64_t kMaxDenseLength = std::int64_t{1} << 25;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ResourceError(std::string(what) + " overflows 64-bit counters");
  }
  return out;
}

// Intermediate representation function; exactly one of counts/entries is live.
struct Rep {
  bool dense = false;
  std::int64_t lo = 0;  // key of counts[0], or min key when sparse
  std::int64_t hi = 0;
  std::vector<std::uint64_t> counts;
  std::vector<Entry> entries;
  std::uint64_t total = 0;
  std::size_t support = 0;  // upper estimate of nonzero keys

  static Rep unit() {
    Rep rep;
    rep.entries = {{0, 1}};
    rep.total = 1;
    rep.support = 1;
    return rep;
  }

  bool empty() const { return total == 0; }

  std::vector<std::uint64_t> as_dense() const {
    if (dense) return counts;
    std::vector<std::uint64_t> out(static_cast<std::size_t>(hi - lo + 1), 0);
    for (const auto& [m, c] : entries) out[static_cast<std::size_t>(m - lo)] = c;
    return out;
  }

  std::vector<Entry> as_entries() const {
    if (!dense) return entries;
    std::vector<Entry> out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] != 0) out.emplace_back(lo + static_cast<std::int64_t>(i), counts[i]);
    }
    return out;
  }

  std::uint64_t at(std::int64_t m) const {
    if (empty() || m < lo || m > hi) return 0;
    if (dense) return counts[static_cast<std::size_t>(m - lo)];
    const auto it = std::lower_bound(entries.begin(), entries.end(), Entry{m, 0},
                                     [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return it != entries.end() && it->first == m ? it->second : 0;
  }
};

Rep convolve(const Rep& cur, const WeightedSet& term, ConvolutionMode mode) {
  if (term.coeff == 0) throw ValidationError("zero coefficient in representation function");
  if (cur.empty() || term.elements.empty()) return Rep{};
  const auto c = term.coeff;
  const auto first = term.elements.front();
  const auto last = term.elements.back();
  const std::int64_t shift_lo = c > 0 ? c * first : c * last;
  const std::int64_t shift_hi = c > 0 ? c * last : c * first;

  Rep out;
  out.lo = cur.lo + shift_lo;
  out.hi = cur.hi + shift_hi;
  out.total = checked_mul(cur.total, term.elements.size(), "representation total");
  const std::int64_t length = out.hi - out.lo + 1;
  const std::uint64_t support_bound =
      std::min<std::uint64_t>(checked_mul(cur.support, term.elements.size(), "support estimate"),
                              static_cast<std::uint64_t>(length));
  out.support = support_bound;

  bool use_dense = false;
  switch (mode) {
    case ConvolutionMode::dense:
      if (length > kMaxDenseLength) {
        throw ResourceError("dense convolution range " + std::to_string(length) + " too large");
      }
      use_dense = true;
      break;
    case ConvolutionMode::sparse:
      break;
    case ConvolutionMode::automatic:
      use_dense = length <= kMaxDenseLength && support_bound * 8 >= static_cast<std::uint64_t>(length);
      break;
  }

  if (use_dense) {
    const auto src = cur.as_dense();
    out.dense = true;
    out.counts.assign(static_cast<std::size_t>(length), 0);
    const auto& k = kernels::active();
    std::span<std::uint64_t> dst(out.counts);
    for (const auto v : term.elements) {
      const auto offset = static_cast<std::size_t>(c * v - shift_lo);
      k.accumulate(dst.subspan(offset, src.size()), src);
    }
    return out;
  }

  const auto src = cur.as_entries();
  std::vector<Entry> shifted;
  shifted.reserve(src.size() * term.elements.size());
  for (const auto v : term.elements) {
    for (const auto& [m, count] : src) shifted.emplace_back(m + c * v, count);
  }
  std::sort(shifted.begin(), shifted.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& e : shifted) {
    if (!out.entries.empty() && out.entries.back().first == e.first) {
      out.entries.back().second += e.second;
    } else {
      out.entries.push_back(e);
    }
  }
  out.support = out.entries.size();
  return out;
}

Rep build_rep(std::span<const WeightedSet> terms, ConvolutionMode mode) {
  Rep rep = Rep::unit();
  for (const auto& term : terms) rep = convolve(rep, term, mode);
  return rep;
}

std::uint64_t energy_of(const Rep& lhs, const Rep& rhs) {
  if (lhs.empty() || rhs.empty()) return 0;
  const std::int64_t lo = std::max(lhs.lo, rhs.lo);
  const std::int64_t hi = std::min(lhs.hi, rhs.hi);
  if (lo > hi) return 0;

  std::uint64_t bound = 0;
  const bool fits = !__builtin_mul_overflow(lhs.total, rhs.total, &bound);
  if (lhs.dense && rhs.dense && fits) {
    // Every partial sum is <= total_l * total_r, so wrapping SIMD math is exact.
    const auto n = static_cast<std::size_t>(hi - lo + 1);
    std::span<const std::uint64_t> a(lhs.counts);
    std::span<const std::uint64_t> b(rhs.counts);
    return kernels::dot(a.subspan(static_cast<std::size_t>(lo - lhs.lo), n),
                        b.subspan(static_cast<std::size_t>(lo - rhs.lo), n));
  }

  unsigned __int128 total = 0;
  const Rep& sparse_side = !lhs.dense ? lhs : rhs;
  const Rep& other = !lhs.dense ? rhs : lhs;
  if (!sparse_side.dense) {
    for (const auto& [m, c] : sparse_side.entries) {
      if (m < lo || m > hi) continue;
      total += static_cast<unsigned __int128>(c) * other.at(m);
    }
  } else {
    for (std::int64_t m = lo; m <= hi; ++m) {
      total += static_cast<unsigned __int128>(lhs.at(m)) * rhs.at(m);
    }
  }
  if (total > std::numeric_limits<std::uint64_t>::max()) {
    throw ResourceError("energy overflows 64-bit counters");
  }
  return static_cast<std::uint64_t>(total);
}

std::uint64_t checked_pow(std::uint64_t base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) out = checked_mul(out, base, "free-variable factor");
  return out;
}

void check_index(const Equation& eq, int i, int j) {
  if (i < 1 || j > eq.variables() || i >= j) {
    throw RangeError("coincidence indices (" + std::to_string(i) + "," + std::to_string(j) +
                     ") need 1 <= i < j <= " + std::to_string(eq.variables()));
  }
}

// Depth-first search over assignments with pairwise different values. The
// last open position is solved for directly, since the equation determines
// it from the others.
class DistinctSearch {
 public:
  DistinctSearch(std::span<const std::int64_t> elements, std::vector<std::int64_t> coeffs,
                 std::uint64_t budget)
      : elements_(elements), coeffs_(std::move(coeffs)), budget_(budget) {}

  // Fix position `pos` to `value` (not drawn from elements_).
  void fix(int pos, std::int64_t value) {
    fixed_pos_ = pos;
    fixed_value_ = value;
  }

  // Visits every solution; stops early when `visit` returns false.
  template <typename Visit>
  void run(Visit&& visit) {
    const int n = static_cast<int>(coeffs_.size());
    order_.clear();
    for (int p = 0; p < n; ++p) {
      if (p != fixed_pos_) order_.push_back(p);
    }
    values_.assign(n, 0);
    std::int64_t partial = 0;
    if (fixed_pos_ >= 0) {
      values_[fixed_pos_] = fixed_value_;
      partial = coeffs_[fixed_pos_] * fixed_value_;
    }
    if (order_.empty()) {
      if (partial == 0) visit(std::span<const std::int64_t>(values_));
      return;
    }
    if (elements_.empty()) return;
    // Relaxed reachable range of the open positions' contribution.
    const auto lo = elements_.front();
    const auto hi = elements_.back();
    suffix_min_.assign(order_.size() + 1, 0);
    suffix_max_.assign(order_.size() + 1, 0);
    for (int t = static_cast<int>(order_.size()) - 1; t >= 0; --t) {
      const auto c = coeffs_[order_[t]];
      suffix_min_[t] = suffix_min_[t + 1] + std::min(c * lo, c * hi);
      suffix_max_[t] = suffix_max_[t + 1] + std::max(c * lo, c * hi);
    }
    stop_ = false;
    descend(0, partial, visit);
  }

  std::uint64_t spent() const { return spent_; }

 private:
  bool used(std::int64_t v, std::size_t depth) const {
    if (fixed_pos_ >= 0 && v == fixed_value_) return true;
    for (std::size_t t = 0; t < depth; ++t) {
      if (values_[order_[t]] == v) return true;
    }
    return false;
  }

  void charge() {
    if (++spent_ > budget_) {
      throw ResourceError("enumeration budget of " + std::to_string(budget_) +
                          " tuple extensions exceeded");
    }
  }

  template <typename Visit>
  void descend(std::size_t depth, std::int64_t partial, Visit& visit) {
    if (stop_) return;
    const std::int64_t need = -partial;
    if (need < suffix_min_[depth] || need > suffix_max_[depth]) return;
    const int pos = order_[depth];
    const auto c = coeffs_[pos];
    if (depth + 1 == order_.size()) {
      charge();
      if (need % c != 0) return;
      const auto v = need / c;
      if (!std::binary_search(elements_.begin(), elements_.end(), v) || used(v, depth)) return;
      values_[pos] = v;
      if (!visit(std::span<const std::int64_t>(values_))) stop_ = true;
      return;
    }
    for (const auto v : elements_) {
      charge();
      if (used(v, depth)) continue;
      values_[pos] = v;
      descend(depth + 1, partial + c * v, visit);
      if (stop_) return;
    }
  }

  std::span<const std::int64_t> elements_;
  std::vector<std::int64_t> coeffs_;
  std::uint64_t budget_;
  std::uint64_t spent_ = 0;
  int fixed_pos_ = -1;
  std::int64_t fixed_value_ = 0;
  bool stop_ = false;
  std::vector<int> order_;
  std::vector<std::int64_t> values_;
  std::vector<std::int64_t> suffix_min_;
  std::vector<std::int64_t> suffix_max_;
};

std::uint64_t count_distinct_inclusion_exclusion(const IntegerSet& set, const Equation& eq) {
  const auto full = eq.full_coefficients();
  const int n = static_cast<int>(full.size());
  std::map<std::vector<std::int64_t>, std::uint64_t> cache;
  __int128 total = 0;
  for (const auto& rgs : set_partitions(n)) {
    const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::int64_t> merged(blocks, 0);
    std::vector<int> sizes(blocks, 0);
    for (int v = 0; v < n; ++v) {
      merged[rgs[v]] += full[v];
      ++sizes[rgs[v]];
    }
    // Moebius weight of the partition: prod (-1)^(|B|-1) (|B|-1)!
    __int128 weight = 1;
    for (const int size : sizes) {
      for (int f = 2; f < size; ++f) weight *= f;
      if (size % 2 == 0) weight = -weight;
    }
    std::sort(merged.begin(), merged.end());
    auto it = cache.find(merged);
    if (it == cache.end()) it = cache.emplace(merged, count_zero_sum(set.elements(), merged)).first;
    total += weight * static_cast<__int128>(it->second);
  }
  if (total < 0 || total > static_cast<__int128>(std::numeric_limits<std::uint64_t>::max())) {
    throw InvariantError("inclusion-exclusion produced an out-of-range count");
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace

std::uint64_t RepFunction::at(std::int64_t m) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{m, 0},
                                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return it != entries_.end() && it->first == m ? it->second : 0;
}

std::map<std::int64_t, std::uint64_t> RepFunction::to_map() const {
  return {entries_.begin(), entries_.end()};
}

RepFunction rep_function(std::span<const WeightedSet> terms, ConvolutionMode mode) {
  if (terms.empty()) throw ValidationError("representation function needs at least one set");
  const Rep rep = build_rep(terms, mode);
  return RepFunction(rep.as_entries(), rep.total);
}

RepFunction rep_function(std::span<const IntegerSet> sets, std::span<const std::int64_t> coeffs,
                         ConvolutionMode mode) {
  if (sets.size() != coeffs.size()) {
    throw ValidationError("rep_function: " + std::to_string(sets.size()) + " sets but " +
                          std::to_string(coeffs.size()) + " coefficients");
  }
  std::vector<WeightedSet> terms;
  for (std::size_t i = 0; i < sets.size(); ++i) terms.push_back(weighted(sets[i], coeffs[i]));
  return rep_function(terms, mode);
}

std::uint64_t energy(std::span<const WeightedSet> lhs, std::span<const WeightedSet> rhs,
                     ConvolutionMode mode) {
  return energy_of(build_rep(lhs, mode), build_rep(rhs, mode));
}

std::uint64_t count_zero_sum(std::span<const std::int64_t> elements,
                             std::span<const std::int64_t> coeffs) {
  int free = 0;
  std::vector<std::int64_t> nonzero;
  for (const auto c : coeffs) {
    if (c == 0) {
      ++free;
    } else {
      nonzero.push_back(c);
    }
  }
  const std::uint64_t free_factor = checked_pow(elements.size(), free);
  if (nonzero.empty()) return free_factor;
  // Split the nonzero terms in half: sum_L = -sum_R.
  const std::size_t half = (nonzero.size() + 1) / 2;
  std::vector<WeightedSet> lhs;
  std::vector<WeightedSet> rhs;
  for (std::size_t t = 0; t < nonzero.size(); ++t) {
    if (t < half) {
      lhs.push_back({elements, nonzero[t]});
    } else {
      rhs.push_back({elements, -nonzero[t]});
    }
  }
  const auto mode = ConvolutionMode::automatic;
  return checked_mul(energy_of(build_rep(lhs, mode), build_rep(rhs, mode)), free_factor,
                     "solution count");
}

std::uint64_t count_all_solutions(const IntegerSet& set, const Equation& eq) {
  require_exact_range(set, eq);
  std::vector<WeightedSet> terms;
  for (const auto a : eq.coefficients()) terms.push_back(weighted(set, a));
  return energy(terms, terms);
}

std::uint64_t count_coincident(const IntegerSet& set, const Equation& eq, int i, int j) {
  check_index(eq, i, j);
  require_exact_range(set, eq);
  auto merged = eq.full_coefficients();
  merged[i - 1] += merged[j - 1];
  merged.erase(merged.begin() + (j - 1));
  return count_zero_sum(set.elements(), merged);
}

std::uint64_t count_distinct_solutions(const IntegerSet& set, const Equation& eq,
                                       DistinctMethod method, std::uint64_t budget) {
  require_exact_range(set, eq);
  if (method == DistinctMethod::inclusion_exclusion) {
    return count_distinct_inclusion_exclusion(set, eq);
  }
  DistinctSearch search(set.elements(), eq.full_coefficients(), budget);
  std::uint64_t count = 0;
  search.run([&](std::span<const std::int64_t>) {
    ++count;
    return true;
  });
  return count;
}

std::optional<std::vector<std::int64_t>> find_distinct_solution(
    std::span<const std::int64_t> elements, const Equation& eq, std::uint64_t budget) {
  if (elements.size() < static_cast<std::size_t>(eq.variables())) return std::nullopt;
  DistinctSearch search(elements, eq.full_coefficients(), budget);
  std::optional<std::vector<std::int64_t>> found;
  search.run([&](std::span<const std::int64_t> values) {
    found.emplace(values.begin(), values.end());
    return false;
  });
  return found;
}

std::optional<std::vector<std::int64_t>> find_distinct_solution_with(
    std::span<const std::int64_t> elements, std::int64_t value, const Equation& eq,
    std::uint64_t budget) {
  if (elements.size() + 1 < static_cast<std::size_t>(eq.variables())) return std::nullopt;
  const auto a = eq.coefficients();
  // Exchanging the two sides, or two same-side positions with equal
  // coefficients, maps distinct solutions to distinct solutions. So it is
  // enough to pin `value` at the first left-hand slot of each coefficient.
  std::uint64_t spent = 0;
  for (int p = 0; p < eq.k(); ++p) {
    if (std::find(a.begin(), a.begin() + p, a[p]) != a.begin() + p) continue;
    DistinctSearch search(elements, eq.full_coefficients(), budget - spent);
    search.fix(p, value);
    std::optional<std::vector<std::int64_t>> found;
    search.run([&](std::span<const std::int64_t> values) {
      found.emplace(values.begin(), values.end());
      return false;
    });
    if (found) return found;
    spent += search.spent();
  }
  return std::nullopt;
}

bool is_solution_free(const IntegerSet& set, const Equation& eq, std::uint64_t budget) {
  return !find_distinct_solution(set.elements(), eq, budget).has_value();
}

SolutionReport solution_report(const IntegerSet& set, const Equation& eq) {
  SolutionReport report;
  report.total = count_all_solutions(set, eq);
  report.distinct = count_distinct_solutions(set, eq, DistinctMethod::inclusion_exclusion);
  for (int i = 1; i <= eq.variables(); ++i) {
    for (int j = i + 1; j <= eq.variables(); ++j) {
      report.coincident[{i, j}] = count_coincident(set, eq, i, j);
    }
  }
  return report;
}

std::vector<std::vector<int>> set_partitions(int n) {
  std::vector<std::vector<int>> out;
  if (n <= 0) return out;
  std::vector<int> rgs(n, 0);
  std::vector<int> prefix_max(n, 0);  // max of rgs[0..i]
  while (true) {
    out.push_back(rgs);
    // Rightmost position that can still grow.
    int i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (int t = i + 1; t < n; ++t) {
      rgs[t] = 0;
      prefix_max[t] = prefix_max[t - 1];
    }
  }
  return out;
}

}  // namespace sfree
