#include "sfree/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "sfree/counting.hpp"

namespace sfree {
namespace {

// Integers that overflow a JSON number's comfortable range go out as strings.
Json big_to_json(const BigInt& value) {
  if (value >= 0 && value <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
    return value.convert_to<std::uint64_t>();
  }
  return value.str();
}

Json elements_json(const IntegerSet& set) {
  Json out = Json::array();
  for (const auto v : set) out.push_back(v);
  return out;
}

}  // namespace

FitResult fit_exponent(std::vector<std::pair<std::int64_t, std::int64_t>> points) {
  if (points.size() < 3) {
    throw ValidationError("exponent fit needs at least 3 points, got " + std::to_string(points.size()));
  }
  for (const auto& [N, size] : points) {
    if (N < 2 || size < 1) {
      throw ValidationError("fit point (" + std::to_string(N) + "," + std::to_string(size) +
                            ") needs N >= 2 and size >= 1");
    }
  }
  const double n = static_cast<double>(points.size());
  double mean_x = 0;
  double mean_y = 0;
  for (const auto& [N, size] : points) {
    mean_x += std::log(static_cast<double>(N));
    mean_y += std::log(static_cast<double>(size));
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0;
  double sxy = 0;
  double syy = 0;
  for (const auto& [N, size] : points) {
    const double dx = std::log(static_cast<double>(N)) - mean_x;
    const double dy = std::log(static_cast<double>(size)) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw ValidationError("exponent fit is degenerate: all N are equal");

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  // A flat response is fitted perfectly by slope 0.
  fit.r_squared = syy == 0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  fit.points = std::move(points);
  return fit;
}

std::vector<RnRow> run_rn_table(const Equation& eq, const RnTableOptions& options) {
  if (options.N_min < 1 || options.N_max < options.N_min) {
    throw ValidationError("table range needs 1 <= N_min <= N_max");
  }
  std::vector<RnRow> rows;
  bool exact_mode = true;
  for (std::int64_t N = options.N_min; N <= options.N_max; ++N) {
    RnRow row;
    row.N = N;
    const RnRow* prev = rows.empty() ? nullptr : &rows.back();
    if (exact_mode) {
      ExactOptions exact;
      exact.budget = options.budget;
      exact.proven_upper = N;
      if (prev != nullptr) {
        exact.incumbent = prev->witness;
        if (prev->exact) exact.proven_upper = std::min(N, prev->size + 1);
      }
      const auto result = exact_max_solution_free(N, eq, exact);
      row.size = result.size;
      row.exact = result.exact;
      row.nodes_explored = result.nodes_explored;
      row.witness = result.witness;
      exact_mode = result.exact;
    }
    if (!row.exact) {
      auto heuristic = random_restarts(N, eq, options.trials, options.seed);
      row.nodes_explored += heuristic.nodes_explored;
      if (heuristic.size > row.size) {
        row.size = heuristic.size;
        row.witness = heuristic.witness;
      }
      if (prev != nullptr && prev->size > row.size) {
        row.size = prev->size;
        row.witness = with_domain(prev->witness, N);
      }
    }
    if (!is_solution_free(row.witness, eq) || static_cast<std::int64_t>(row.witness.size()) != row.size) {
      throw InvariantError("R(N) witness for N=" + std::to_string(N) + " failed re-verification");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<EnergyBoundReport> run_bound_report(const Equation& eq,
                                                const std::vector<IntegerSet>& sets) {
  std::vector<EnergyBoundReport> reports;
  reports.reserve(sets.size());
  for (const auto& set : sets) reports.push_back(check_energy_bounds(set, eq));
  return reports;
}

FiniteSet random_subset(std::mt19937_64& rng, std::int64_t span, double density) {
  std::vector<std::int64_t> values;
  for (std::int64_t v = 1; v <= span; ++v) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < density) values.push_back(v);
  }
  if (values.empty()) values.push_back(1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(span)));
  return FiniteSet(std::move(values));
}

InequalitySummary run_inequality_trials(int trials, std::uint64_t seed) {
  static constexpr double kDensities[] = {0.1, 0.3, 0.6};
  static constexpr std::int64_t kSpans[] = {20, 40, 50};
  if (trials < 1) throw ValidationError("trials must be >= 1, got " + std::to_string(trials));
  InequalitySummary summary;
  summary.trials = trials;
  summary.seed = seed;
  auto fail = [&](const char* check, std::uint64_t trial_seed, Json detail) {
    Json record;
    record["check"] = check;
    record["trial_seed"] = trial_seed;
    record["detail"] = std::move(detail);
    summary.failures.push_back(std::move(record));
  };
  auto set_json = [](const FiniteSet& set) {
    Json out = Json::array();
    for (const auto v : set) out.push_back(v);
    return out;
  };

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
    std::mt19937_64 rng(trial_seed);
    const double density = kDensities[t % 3];
    const std::int64_t span = kSpans[(t / 3) % 3];

    const auto a = random_subset(rng, span, density);
    const auto b = random_subset(rng, span, density);
    const auto c = random_subset(rng, span, density);
    const auto triangle = ruzsa_triangle_check(a, b, c);
    ++summary.triangle.run;
    if (!triangle.holds) {
      ++summary.triangle.failures;
      fail("ruzsa_triangle", trial_seed, {{"A", set_json(a)}, {"B", set_json(b)}, {"C", set_json(c)}});
    }

    const auto pa = random_subset(rng, 40, density);
    const auto pb = random_subset(rng, 40, density);
    const auto k = 1 + static_cast<std::int64_t>(rng() % 4);
    const auto plunnecke = plunnecke_check(pa, pb, k);
    ++summary.plunnecke.run;
    if (!plunnecke.holds) {
      ++summary.plunnecke.failures;
      fail("plunnecke", trial_seed, {{"A", set_json(pa)}, {"B", set_json(pb)}, {"k", k}});
    }

    std::vector<std::pair<FiniteSet, std::int64_t>> system;
    const auto terms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < terms; ++i) {
      auto set = random_subset(rng, 30, density);
      system.emplace_back(std::move(set), 1 + static_cast<std::int64_t>(rng() % 3));
    }
    const auto cs = cs_energy_lower_check(system);
    ++summary.cauchy_schwarz.run;
    if (!cs.holds) {
      ++summary.cauchy_schwarz.failures;
      Json detail = Json::array();
      for (const auto& [set, coeff] : system) detail.push_back({{"set", set_json(set)}, {"coeff", coeff}});
      fail("cauchy_schwarz", trial_seed, {{"system", std::move(detail)}});
    }

    std::vector<std::int64_t> factors;
    const auto length = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < length; ++i) factors.push_back(1 + static_cast<std::int64_t>(rng() % 3));
    const DilateSpec spec(factors);
    const auto base = random_subset(rng, span, density);
    ++summary.dilate_inclusion.run;
    if (!is_subset(sum_of_dilates(spec, base), iterated_sumset(spec.norm1(), base))) {
      ++summary.dilate_inclusion.failures;
      fail("dilate_inclusion", trial_seed, {{"A", set_json(base)}, {"s", factors}});
    }
  }
  return summary;
}

Json to_json(const InequalitySummary& summary) {
  auto tally = [](const CheckTally& t) {
    Json out;
    out["run"] = t.run;
    out["failures"] = t.failures;
    return out;
  };
  Json out;
  out["trials"] = summary.trials;
  out["seed"] = summary.seed;
  out["failures"] = Json(summary.failures);
  Json counts;
  counts["ruzsa_triangle"] = tally(summary.triangle);
  counts["plunnecke"] = tally(summary.plunnecke);
  counts["cauchy_schwarz"] = tally(summary.cauchy_schwarz);
  counts["dilate_inclusion"] = tally(summary.dilate_inclusion);
  out["per_check_counts"] = std::move(counts);
  return out;
}

double round_real(double value) {
  if (!std::isfinite(value)) return value;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return std::strtod(buffer, nullptr);
}

std::string join_elements(const IntegerSet& set, char separator) {
  std::string out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += separator;
    out += std::to_string(set.elements()[i]);
  }
  return out;
}

std::string rn_table_csv(const Equation& eq, const std::vector<RnRow>& rows) {
  std::ostringstream out;
  out << "eq,N,size,exact,nodes_explored,witness\n";
  for (const auto& row : rows) {
    out << '"' << eq.to_string() << "\"," << row.N << ',' << row.size << ','
        << (row.exact ? "true" : "false") << ',' << row.nodes_explored << ','
        << join_elements(row.witness, ' ') << '\n';
  }
  return out.str();
}

Json rn_table_json(const Equation& eq, const std::vector<RnRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json item;
    item["N"] = row.N;
    item["eq"] = eq.to_string();
    item["size"] = row.size;
    item["exact"] = row.exact;
    item["nodes_explored"] = row.nodes_explored;
    item["witness"] = elements_json(row.witness);
    out.push_back(std::move(item));
  }
  return out;
}

Json to_json(const SearchResult& result, std::int64_t N, const Equation& eq, bool with_time) {
  Json out;
  out["N"] = N;
  out["eq"] = eq.to_string();
  out["size"] = result.size;
  out["exact"] = result.exact;
  out["witness"] = elements_json(result.witness);
  out["nodes_explored"] = result.nodes_explored;
  if (with_time) out["time_ms"] = result.time_ms;
  return out;
}

Json to_json(const FitResult& fit) {
  Json out;
  out["slope"] = round_real(fit.slope);
  out["intercept"] = round_real(fit.intercept);
  out["r_squared"] = round_real(fit.r_squared);
  Json points = Json::array();
  for (const auto& [N, size] : fit.points) points.push_back(Json::array({N, size}));
  out["points"] = std::move(points);
  return out;
}

Json to_json(const EnergyBoundReport& report) {
  Json out;
  out["M"] = report.M;
  out["N"] = report.N;
  out["E"] = report.energy;
  out["lower"] = round_real(report.lower());
  out["lower_numerator"] = big_to_json(report.lower_numerator);
  out["lower_denominator"] = big_to_json(report.lower_denominator);
  out["lower_holds"] = report.lower_holds;
  out["upper"] = big_to_json(report.upper);
  out["solution_free"] = report.solution_free;
  out["upper_applicable"] = report.upper_applicable;
  out["upper_holds"] = report.upper_holds;
  return out;
}

Json to_json(const SolutionReport& report, const Equation& eq) {
  Json out;
  out["eq"] = eq.to_string();
  out["E"] = report.total;
  out["distinct"] = report.distinct;
  Json coincident = Json::array();
  for (const auto& [pair, count] : report.coincident) {
    Json item;
    item["i"] = pair.first;
    item["j"] = pair.second;
    item["T"] = count;
    coincident.push_back(std::move(item));
  }
  out["coincident"] = std::move(coincident);
  return out;
}

Json ruzsa_header(const RuzsaParams& params, std::size_t size) {
  Json out;
  out["d"] = params.d;
  out["k"] = params.k;
  out["base"] = params.base();
  out["N"] = params.N;
  out["size"] = size;
  out["predicted_exponent"] = round_real(predicted_exponent(params.d, params.k));
  return out;
}

std::string dump(const Json& json) { return json.dump() + "\n"; }

}  // namespace sfree
