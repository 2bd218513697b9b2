#include "sfree/core.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

namespace sfree {

Equation::Equation(std::vector<std::int64_t> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.size() < 2) {
    throw ValidationError("equation needs at least 2 coefficients, got " +
                          std::to_string(coefficients_.size()));
  }
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const auto a = coefficients_[i];
    if (a == 0) {
      throw ValidationError("coefficient a" + std::to_string(i + 1) + " is zero");
    }
    if (a > kMaxCoefficient || a < -kMaxCoefficient) {
      throw ValidationError("coefficient a" + std::to_string(i + 1) + " exceeds 32-bit range");
    }
    norm1_ += a < 0 ? -a : a;
  }
}

std::vector<std::int64_t> Equation::full_coefficients() const {
  std::vector<std::int64_t> full(coefficients_);
  for (auto a : coefficients_) full.push_back(-a);
  return full;
}

std::string Equation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(coefficients_[i]);
  }
  return out;
}

Equation parse_equation(std::string_view text) {
  std::vector<std::int64_t> coefficients;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    const auto token = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    std::int64_t value = 0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    // from_chars rejects a leading '+' and whitespace, which is what we want.
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last) {
      throw ParseError("malformed coefficient '" + std::string(token) + "' in equation '" +
                       std::string(text) + "'");
    }
    coefficients.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Equation(std::move(coefficients));
}

std::int64_t evaluate(const Equation& eq, std::span<const std::int64_t> assignment) {
  if (assignment.size() != static_cast<std::size_t>(eq.variables())) {
    throw ValidationError("assignment has " + std::to_string(assignment.size()) +
                          " values, equation needs " + std::to_string(eq.variables()));
  }
  const auto a = eq.coefficients();
  const auto k = a.size();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < k; ++i) total += a[i] * (assignment[i] - assignment[k + i]);
  return total;
}

bool is_distinct_solution(const Equation& eq, std::span<const std::int64_t> assignment) {
  if (evaluate(eq, assignment) != 0) return false;
  std::vector<std::int64_t> sorted(assignment.begin(), assignment.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool IntegerSet::contains(std::int64_t value) const {
  return std::binary_search(elements_.begin(), elements_.end(), value);
}

IntegerSet make_set(std::vector<std::int64_t> values, std::int64_t domain_bound) {
  if (domain_bound < 1) {
    throw ValidationError("domain bound must be >= 1, got " + std::to_string(domain_bound));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (!values.empty() && (values.front() < 1 || values.back() > domain_bound)) {
    const auto bad = values.front() < 1 ? values.front() : values.back();
    throw RangeError("element " + std::to_string(bad) + " outside [1, " +
                     std::to_string(domain_bound) + "]");
  }
  IntegerSet set;
  set.elements_ = std::move(values);
  set.domain_bound_ = domain_bound;
  return set;
}

IntegerSet with_domain(const IntegerSet& set, std::int64_t domain_bound) {
  return make_set({set.begin(), set.end()}, domain_bound);
}

std::string to_string(const IntegerSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(set.elements()[i]);
  }
  return out + "}";
}

void require_exact_range(const IntegerSet& set, const Equation& eq) {
  constexpr std::int64_t kLimit = std::int64_t{1} << 31;
  if (set.domain_bound() > kLimit / eq.norm1()) {
    throw ValidationError("domain bound " + std::to_string(set.domain_bound()) +
                          " too large for exact counting with norm1 " +
                          std::to_string(eq.norm1()) + " (need N*norm1 <= 2^31)");
  }
}

}  // namespace sfree
