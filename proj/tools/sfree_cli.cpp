// sfree: command-line front end for solution-free set experiments.
//
// Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
// 2 validation/parse error, 3 budget or overflow, 4 invariant violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sfree/constructions.hpp"
#include "sfree/counting.hpp"
#include "sfree/experiment.hpp"
#include "sfree/search.hpp"
#include "sfree/set_io.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvariant = 4;

using sfree::Json;

std::optional<std::int64_t> optional_bound(std::int64_t N) {
  return N > 0 ? std::optional<std::int64_t>(N) : std::nullopt;
}

// Splits on commas outside double quotes; quotes are dropped.
std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (const char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::vector<std::pair<std::int64_t, std::int64_t>> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sfree::ValidationError("cannot open points file '" + path + "'");
  std::vector<std::pair<std::int64_t, std::int64_t>> points;
  std::string line;
  std::size_t n_col = 0;
  std::size_t size_col = 1;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_csv_row(line);
    if (first) {
      first = false;
      // A header row names the columns; `table rn` CSV has N and size.
      bool header = false;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "N") n_col = i, header = true;
        if (fields[i] == "size") size_col = i, header = true;
      }
      if (header) continue;
    }
    if (fields.size() <= std::max(n_col, size_col)) {
      throw sfree::ParseError("points file row '" + line + "' has too few columns");
    }
    try {
      points.emplace_back(std::stoll(fields[n_col]), std::stoll(fields[size_col]));
    } catch (const std::exception&) {
      throw sfree::ParseError("points file row '" + line + "' is not numeric");
    }
  }
  return points;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solution-free sets for symmetric linear equations"};
  app.require_subcommand(1);

  std::string eq_text;
  std::string set_path;
  std::int64_t N = 0;
  std::uint64_t budget = sfree::kDefaultBudget;
  std::uint64_t seed = 1;
  int trials = 20;
  bool as_json = false;
  bool as_csv = false;
  bool timing = false;

  auto add_eq = [&](CLI::App* cmd) {
    cmd->add_option("--eq", eq_text, "Left-hand coefficients, e.g. 1,1")->required();
  };
  auto add_set = [&](CLI::App* cmd) {
    cmd->add_option("--set", set_path, "Set file (integers per line or JSON array)")->required();
    cmd->add_option("--N", N, "Domain bound (default: largest element)");
  };

  // construct ruzsa
  auto* construct = app.add_subcommand("construct", "Build explicit solution-free sets");
  construct->require_subcommand(1);
  auto* ruzsa = construct->add_subcommand("ruzsa", "Base-(d^2 k) digit set with digits 0..d-1");
  std::int64_t d = 2;
  std::int64_t k = 2;
  ruzsa->add_option("--d", d, "Digit bound")->required();
  ruzsa->add_option("--k", k, "Number of left-hand terms")->required();
  ruzsa->add_option("--N", N, "Domain bound")->required();
  ruzsa->add_flag("--json", as_json, "Emit a single JSON object instead of header + lines");

  // count energy|solutions|distinct
  auto* count = app.add_subcommand("count", "Count solutions over a set");
  count->require_subcommand(1);
  auto* count_energy = count->add_subcommand("energy", "Total solutions E");
  auto* count_solutions = count->add_subcommand("solutions", "E, distinct count and all T_ij");
  auto* count_distinct = count->add_subcommand("distinct", "Solutions with pairwise different values");
  std::string method = "inclusion-exclusion";
  for (auto* cmd : {count_energy, count_solutions, count_distinct}) {
    add_eq(cmd);
    add_set(cmd);
  }
  count_distinct->add_option("--method", method, "enumerate | inclusion-exclusion")
      ->check(CLI::IsMember({"enumerate", "inclusion-exclusion"}));
  count_distinct->add_option("--budget", budget, "Enumeration budget");

  // verify solution-free
  auto* verify = app.add_subcommand("verify", "Verify set properties");
  verify->require_subcommand(1);
  auto* verify_free = verify->add_subcommand("solution-free", "Check for a distinct-valued solution");
  add_eq(verify_free);
  add_set(verify_free);
  verify_free->add_option("--budget", budget, "Enumeration budget");

  // search exact|heuristic
  auto* search = app.add_subcommand("search", "Largest solution-free subset of [1,N]");
  search->require_subcommand(1);
  auto* search_exact = search->add_subcommand("exact", "Branch-and-bound over the solution hypergraph");
  auto* search_heuristic = search->add_subcommand("heuristic", "Best of seeded greedy scans");
  for (auto* cmd : {search_exact, search_heuristic}) {
    add_eq(cmd);
    cmd->add_option("--N", N, "Domain bound")->required();
    cmd->add_flag("--timing", timing, "Include time_ms in the output");
  }
  search_exact->add_option("--budget", budget, "Work budget (subsets and search nodes)");
  search_heuristic->add_option("--trials", trials, "Number of restarts");
  search_heuristic->add_option("--seed", seed, "Random seed");

  // check inequalities|bounds
  auto* check = app.add_subcommand("check", "Verify inequalities on concrete sets");
  check->require_subcommand(1);
  auto* check_ineq = check->add_subcommand("inequalities", "Randomized triangle/Pluennecke/CS/inclusion checks");
  check_ineq->add_option("--trials", trials, "Trials per check")->default_val(1000);
  check_ineq->add_option("--seed", seed, "Random seed");
  auto* check_bounds = check->add_subcommand("bounds", "Energy lower/upper bounds for given sets");
  std::vector<std::string> set_paths;
  add_eq(check_bounds);
  check_bounds->add_option("--set", set_paths, "Set file (repeatable)")->required();
  check_bounds->add_option("--N", N, "Domain bound (default: largest element)");

  // table rn
  auto* table = app.add_subcommand("table", "Experiment tables");
  table->require_subcommand(1);
  auto* table_rn = table->add_subcommand("rn", "R(N) for N = N-min..N");
  std::int64_t N_min = 1;
  add_eq(table_rn);
  table_rn->add_option("--N", N, "Largest N")->required();
  table_rn->add_option("--N-min", N_min, "Smallest N");
  table_rn->add_option("--budget", budget, "Exact-search budget per row");
  table_rn->add_option("--trials", trials, "Heuristic restarts for inexact rows");
  table_rn->add_option("--seed", seed, "Random seed for heuristic rows");
  auto* format = table_rn->add_option_group("format");
  format->add_flag("--json", as_json, "JSON array output");
  format->add_flag("--csv", as_csv, "CSV output (default)");
  format->require_option(0, 1);

  // fit
  auto* fit = app.add_subcommand("fit", "Least-squares slope of log size against log N");
  std::string points_path;
  fit->add_option("--points", points_path, "CSV with N and size columns (e.g. from table rn)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (ruzsa->parsed()) {
      const sfree::RuzsaParams params{d, k, N};
      const auto set = sfree::ruzsa_digit_set(params);
      auto header = sfree::ruzsa_header(params, set.size());
      if (as_json) {
        Json out = header;
        Json elements = Json::array();
        for (const auto v : set) elements.push_back(v);
        out["set"] = std::move(elements);
        std::cout << sfree::dump(out);
      } else {
        std::cout << "# " << sfree::dump(header) << sfree::format_set_lines(set);
      }
    } else if (count_energy->parsed() || count_solutions->parsed() || count_distinct->parsed()) {
      const auto eq = sfree::parse_equation(eq_text);
      const auto set = sfree::load_set_file(set_path, optional_bound(N));
      Json out;
      if (count_solutions->parsed()) {
        out = sfree::to_json(sfree::solution_report(set, eq), eq);
      } else {
        out["eq"] = eq.to_string();
        out["M"] = set.size();
        out["N"] = set.domain_bound();
        if (count_energy->parsed()) {
          out["E"] = sfree::count_all_solutions(set, eq);
        } else {
          const auto m = method == "enumerate" ? sfree::DistinctMethod::enumerate
                                               : sfree::DistinctMethod::inclusion_exclusion;
          out["method"] = method;
          out["distinct"] = sfree::count_distinct_solutions(set, eq, m, budget);
        }
      }
      std::cout << sfree::dump(out);
    } else if (verify_free->parsed()) {
      const auto eq = sfree::parse_equation(eq_text);
      const auto set = sfree::load_set_file(set_path, optional_bound(N));
      const auto witness = sfree::find_distinct_solution(set.elements(), eq, budget);
      Json out;
      out["eq"] = eq.to_string();
      out["M"] = set.size();
      out["solution_free"] = !witness.has_value();
      if (witness) out["solution"] = *witness;
      std::cout << sfree::dump(out);
    } else if (search_exact->parsed() || search_heuristic->parsed()) {
      const auto eq = sfree::parse_equation(eq_text);
      sfree::SearchResult result;
      if (search_exact->parsed()) {
        sfree::ExactOptions options;
        options.budget = budget;
        result = sfree::exact_max_solution_free(N, eq, options);
        if (!result.exact) std::cerr << "sfree: budget exhausted, result is a lower bound\n";
      } else {
        result = sfree::random_restarts(N, eq, trials, seed);
      }
      if (!sfree::is_solution_free(result.witness, eq)) {
        throw sfree::InvariantError("search witness failed re-verification");
      }
      std::cout << sfree::dump(sfree::to_json(result, N, eq, timing));
    } else if (check_ineq->parsed()) {
      const auto summary = sfree::run_inequality_trials(trials, seed);
      std::cout << sfree::dump(sfree::to_json(summary));
      if (!summary.ok()) {
        std::cerr << "sfree: " << summary.failures.size() << " inequality check(s) failed\n";
        return kExitInvariant;
      }
    } else if (check_bounds->parsed()) {
      const auto eq = sfree::parse_equation(eq_text);
      std::vector<sfree::IntegerSet> sets;
      for (const auto& path : set_paths) sets.push_back(sfree::load_set_file(path, optional_bound(N)));
      const auto reports = sfree::run_bound_report(eq, sets);
      Json out = Json::array();
      bool ok = true;
      for (std::size_t i = 0; i < reports.size(); ++i) {
        Json item;
        item["set"] = set_paths[i];
        item.update(sfree::to_json(reports[i]));
        out.push_back(std::move(item));
        ok = ok && reports[i].lower_holds && (!reports[i].upper_applicable || reports[i].upper_holds);
      }
      std::cout << sfree::dump(out);
      if (!ok) {
        std::cerr << "sfree: an energy bound was violated\n";
        return kExitInvariant;
      }
    } else if (table_rn->parsed()) {
      const auto eq = sfree::parse_equation(eq_text);
      sfree::RnTableOptions options;
      options.N_min = N_min;
      options.N_max = N;
      options.budget = budget;
      options.trials = trials;
      options.seed = seed;
      const auto rows = sfree::run_rn_table(eq, options);
      if (as_json) {
        std::cout << sfree::dump(sfree::rn_table_json(eq, rows));
      } else {
        std::cout << sfree::rn_table_csv(eq, rows);
      }
    } else if (fit->parsed()) {
      std::cout << sfree::dump(sfree::to_json(sfree::fit_exponent(read_points(points_path))));
    }
  } catch (const sfree::ResourceError& e) {
    std::cerr << "sfree: " << e.what() << '\n';
    return kExitResource;
  } catch (const sfree::InvariantError& e) {
    std::cerr << "sfree: invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const sfree::Error& e) {
    std::cerr << "sfree: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
