#pragma once

// Experiment pipelines (R(N) tables, bound reports), log-log exponent fitting,
// and the stable JSON/CSV renderings the CLI emits.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sfree/constructions.hpp"
#include "sfree/core.hpp"
#include "sfree/search.hpp"
#include "sfree/sumset.hpp"

namespace sfree {

using Json = nlohmann::ordered_json;

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> points;  // (N, size)
};

/// Least squares of ln(size) against ln(N). Needs >= 3 points with N >= 2
/// and size >= 1; all-equal N is rejected.
FitResult fit_exponent(std::vector<std::pair<std::int64_t, std::int64_t>> points);

struct RnRow {
  std::int64_t N = 0;
  std::int64_t size = 0;
  bool exact = false;
  std::uint64_t nodes_explored = 0;
  IntegerSet witness;
};

struct RnTableOptions {
  std::int64_t N_min = 1;
  std::int64_t N_max = 1;
  std::uint64_t budget = kDefaultBudget;
  int trials = 20;
  std::uint64_t seed = 1;
};

/// Exact R(N) for ascending N while the budget holds, heuristic lower bounds
/// afterwards. Exact rows seed the next search with R(N) <= R(N-1) + 1.
/// Every witness is re-verified; a failure raises InvariantError.
std::vector<RnRow> run_rn_table(const Equation& eq, const RnTableOptions& options);

/// Energy bound checks for each set. Sets are used as given (their domain
/// bound is N).
std::vector<EnergyBoundReport> run_bound_report(const Equation& eq,
                                                const std::vector<IntegerSet>& sets);

/// Random subset of [1, span], each element kept with probability `density`;
/// never empty. Portable: draws straight from mt19937_64.
FiniteSet random_subset(std::mt19937_64& rng, std::int64_t span, double density);

struct CheckTally {
  std::uint64_t run = 0;
  std::uint64_t failures = 0;
};

struct InequalitySummary {
  int trials = 0;
  std::uint64_t seed = 0;
  CheckTally triangle;
  CheckTally plunnecke;
  CheckTally cauchy_schwarz;
  CheckTally dilate_inclusion;
  std::vector<Json> failures;  // one record per failed check, with its trial seed

  bool ok() const { return failures.empty(); }
};

/// `trials` rounds of each checker on seeded random sets. Trial t draws from
/// mt19937_64(seed + t); densities cycle through {0.1, 0.3, 0.6} and spans
/// through {20, 40, 50} (Pluennecke uses [1,40], Cauchy-Schwarz [1,30]).
InequalitySummary run_inequality_trials(int trials, std::uint64_t seed);
Json to_json(const InequalitySummary& summary);

/// 12 significant digits, the precision of every real in our output.
double round_real(double value);

std::string join_elements(const IntegerSet& set, char separator);

std::string rn_table_csv(const Equation& eq, const std::vector<RnRow>& rows);
Json rn_table_json(const Equation& eq, const std::vector<RnRow>& rows);
Json to_json(const SearchResult& result, std::int64_t N, const Equation& eq, bool with_time);
Json to_json(const FitResult& fit);
Json to_json(const EnergyBoundReport& report);
Json to_json(const SolutionReport& report, const Equation& eq);
Json ruzsa_header(const RuzsaParams& params, std::size_t size);

/// Compact JSON text with a trailing newline.
std::string dump(const Json& json);

}  // namespace sfree
