#include "sfree/sumset.hpp"

#include <algorithm>
#include <bit>

#include "sfree/counting.hpp"
#include "sfree/kernels.hpp"

namespace sfree {
namespace {

constexpr std::int64_t kMaxBitsetSpan = std::int64_t{1} << 20;

std::vector<std::uint64_t> to_bits(const FiniteSet& set, std::size_t words) {
  std::vector<std::uint64_t> bits(words, 0);
  for (const auto v : set) {
    const auto offset = static_cast<std::uint64_t>(v - set.min());
    bits[offset / 64] |= std::uint64_t{1} << (offset % 64);
  }
  return bits;
}

FiniteSet sumset_bitset(const FiniteSet& a, const FiniteSet& b) {
  const std::int64_t base = a.min() + b.min();
  const auto span = static_cast<std::size_t>(a.max() + b.max() - base + 1);
  const auto a_bits = to_bits(a, (static_cast<std::size_t>(a.max() - a.min()) + 64) / 64);
  std::vector<std::uint64_t> out((span + 63) / 64, 0);
  const auto& k = kernels::active();
  for (const auto v : b) k.or_shifted(out, a_bits, static_cast<std::size_t>(v - b.min()));

  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(k.popcount(out)));
  for (std::size_t w = 0; w < out.size(); ++w) {
    for (std::uint64_t word = out[w]; word != 0; word &= word - 1) {
      values.push_back(base + static_cast<std::int64_t>(w * 64) + std::countr_zero(word));
    }
  }
  return FiniteSet(std::move(values));
}

FiniteSet sumset_merge(const FiniteSet& a, const FiniteSet& b) {
  std::vector<std::int64_t> values;
  values.reserve(a.size() * b.size());
  for (const auto x : a) {
    for (const auto y : b) values.push_back(x + y);
  }
  return FiniteSet(std::move(values));
}

BigInt pow_size(std::size_t base, std::int64_t exponent) {
  return big_pow(BigInt(base), static_cast<unsigned>(exponent));
}

}  // namespace

FiniteSet::FiniteSet(std::vector<std::int64_t> values) : elements_(std::move(values)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool FiniteSet::contains(std::int64_t value) const {
  return std::binary_search(elements_.begin(), elements_.end(), value);
}

std::string to_string(const FiniteSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(set.elements()[i]);
  }
  return out + "}";
}

bool is_subset(const FiniteSet& inner, const FiniteSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

DilateSpec::DilateSpec(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw ValidationError("dilate spec needs at least one factor");
  for (const auto s : factors_) {
    if (s < 1) throw ValidationError("dilate factor must be >= 1, got " + std::to_string(s));
    norm1_ += s;
  }
}

FiniteSet sumset(const FiniteSet& a, const FiniteSet& b, SumsetMethod method) {
  if (a.empty() || b.empty()) return {};
  const std::int64_t span = a.max() + b.max() - a.min() - b.min() + 1;
  const bool use_bits = method == SumsetMethod::bitset ||
                        (method == SumsetMethod::automatic && span <= kMaxBitsetSpan);
  return use_bits ? sumset_bitset(a, b) : sumset_merge(a, b);
}

FiniteSet difference(const FiniteSet& a, const FiniteSet& b) { return sumset(a, scale(-1, b)); }

FiniteSet scale(std::int64_t c, const FiniteSet& a) {
  if (c == 0) throw ValidationError("scale factor must be nonzero");
  std::vector<std::int64_t> values;
  values.reserve(a.size());
  for (const auto v : a) values.push_back(c * v);
  return FiniteSet(std::move(values));
}

FiniteSet dilate(std::int64_t t, const FiniteSet& a) {
  if (t < 1) throw ValidationError("dilation factor must be >= 1, got " + std::to_string(t));
  return scale(t, a);
}

FiniteSet iterated_sumset(std::int64_t k, const FiniteSet& b) {
  if (k < 1) throw ValidationError("iterated sumset needs k >= 1, got " + std::to_string(k));
  FiniteSet out = b;
  for (std::int64_t i = 1; i < k; ++i) out = sumset(out, b);
  return out;
}

FiniteSet sum_of_dilates(const DilateSpec& spec, const FiniteSet& a) {
  const auto factors = spec.factors();
  FiniteSet out = dilate(factors[0], a);
  for (std::size_t i = 1; i < factors.size(); ++i) out = sumset(out, dilate(factors[i], a));
  return out;
}

TriangleCheck ruzsa_triangle_check(const FiniteSet& a, const FiniteSet& b, const FiniteSet& c) {
  if (b.empty()) throw ValidationError("triangle check needs nonempty B");
  TriangleCheck check;
  check.lhs = BigInt(difference(a, c).size()) * b.size();
  check.rhs = BigInt(difference(a, b).size()) * difference(b, c).size();
  check.holds = check.lhs <= check.rhs;
  return check;
}

PlunneckeCheck plunnecke_check(const FiniteSet& a, const FiniteSet& b, std::int64_t k) {
  if (a.empty() || b.empty()) throw ValidationError("Pluennecke check needs nonempty A and B");
  if (k < 1) throw ValidationError("Pluennecke check needs k >= 1, got " + std::to_string(k));
  PlunneckeCheck check;
  check.k_numerator = sumset(a, b).size();
  check.k_denominator = a.size();
  check.lhs = BigInt(iterated_sumset(k, b).size()) * pow_size(a.size(), k);
  check.bound = pow_size(check.k_numerator, k) * a.size();
  check.holds = check.lhs <= check.bound;
  return check;
}

CauchySchwarzCheck cs_energy_lower_check(std::span<const std::pair<FiniteSet, std::int64_t>> sets) {
  if (sets.empty()) throw ValidationError("Cauchy-Schwarz check needs at least one set");
  std::vector<WeightedSet> terms;
  BigInt product = 1;
  FiniteSet total{0};
  for (const auto& [set, coeff] : sets) {
    terms.push_back({set.elements(), coeff});
    product *= set.size();
    total = sumset(total, scale(coeff, set));
  }
  CauchySchwarzCheck check;
  check.energy = energy(terms, terms);
  check.product_sq = product * product;
  check.sumset_size = total.size();
  check.holds = BigInt(check.energy) * check.sumset_size >= check.product_sq;
  return check;
}

double Rational::value() const {
  return numerator.convert_to<double>() / denominator.convert_to<double>();
}

std::string Rational::to_string() const {
  const BigInt g = boost::multiprecision::gcd(numerator, denominator);
  const BigInt p = g == 0 ? numerator : numerator / g;
  const BigInt q = g == 0 ? denominator : denominator / g;
  return p.str() + "/" + q.str();
}

DilateEnergySurvey dilate_energy_survey(const FiniteSet& a, const DilateSpec& t_spec,
                                        const DilateSpec& s_spec) {
  if (a.empty()) throw ValidationError("dilate energy survey needs a nonempty set");
  auto system_energy = [&](const DilateSpec& spec) {
    std::vector<WeightedSet> terms;
    for (const auto t : spec.factors()) terms.push_back({a.elements(), t});
    return energy(terms, terms);
  };
  DilateEnergySurvey survey;
  survey.n = a.size();
  survey.energy_t = system_energy(t_spec);
  survey.energy_s = system_energy(s_spec);
  const BigInt n = survey.n;
  survey.normalized_t = {survey.energy_t, big_pow(n, static_cast<unsigned>(2 * t_spec.length() - 1))};
  survey.normalized_s = {survey.energy_s, big_pow(n, static_cast<unsigned>(2 * s_spec.length() - 1))};
  return survey;
}

}  // namespace sfree
