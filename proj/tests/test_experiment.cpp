#include <doctest.h>

#include <cmath>

#include "sfree/experiment.hpp"
#include "sfree/set_io.hpp"

using namespace sfree;

TEST_CASE("fit recovers an exact power law") {
  const auto fit = fit_exponent({{4, 2}, {16, 4}, {64, 8}, {256, 16}});
  CHECK(fit.slope == doctest::Approx(0.5));
  CHECK(fit.intercept == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0));

  const auto flat = fit_exponent({{2, 3}, {5, 3}, {9, 3}});
  CHECK(flat.slope == doctest::Approx(0.0));
  CHECK(flat.r_squared == 1.0);
}

TEST_CASE("fit validation") {
  CHECK_THROWS_AS(fit_exponent({{2, 1}, {4, 2}}), ValidationError);
  CHECK_THROWS_AS(fit_exponent({{1, 1}, {4, 2}, {8, 3}}), ValidationError);
  CHECK_THROWS_AS(fit_exponent({{2, 0}, {4, 2}, {8, 3}}), ValidationError);
  CHECK_THROWS_AS(fit_exponent({{5, 1}, {5, 2}, {5, 3}}), ValidationError);
}

TEST_CASE("digit-set sizes fit the predicted exponent") {
  std::vector<std::pair<std::int64_t, std::int64_t>> points;
  for (int t = 2; t <= 5; ++t) {
    const auto N = static_cast<std::int64_t>(std::pow(12, t));
    points.emplace_back(N, static_cast<std::int64_t>(ruzsa_digit_set({2, 3, N}).size()));
  }
  CHECK(fit_exponent(points).slope == doctest::Approx(predicted_exponent(2, 3)).epsilon(1e-9));
}

TEST_CASE("set text parsing") {
  const auto lines = parse_set_text("# comment\n5\n\n 2 \r\n7\n");
  CHECK(std::vector<std::int64_t>(lines.begin(), lines.end()) == std::vector<std::int64_t>{2, 5, 7});
  CHECK(lines.domain_bound() == 7);
  const auto json = parse_set_text("  [3, 1, 3]", 10);
  CHECK(std::vector<std::int64_t>(json.begin(), json.end()) == std::vector<std::int64_t>{1, 3});
  CHECK(json.domain_bound() == 10);
  CHECK(parse_set_text("").empty());
  CHECK_THROWS_AS(parse_set_text("1\nx\n"), ParseError);
  CHECK_THROWS_AS(parse_set_text("[1, 2.5]"), ParseError);
  CHECK_THROWS_AS(parse_set_text("[1, 2"), ParseError);
  CHECK_THROWS_AS(parse_set_text("0\n"), RangeError);
  CHECK_THROWS_AS(parse_set_text("9\n", 5), RangeError);
  CHECK(format_set_lines(lines) == "2\n5\n7\n");
}

TEST_CASE("R(N) table rows") {
  RnTableOptions options;
  options.N_min = 3;
  options.N_max = 7;
  const auto rows = run_rn_table(parse_equation("1,1"), options);
  REQUIRE(rows.size() == 5);
  const std::int64_t sizes[] = {3, 3, 4, 4, 4};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].N == static_cast<std::int64_t>(i + 3));
    CHECK(rows[i].size == sizes[i]);
    CHECK(rows[i].exact);
  }
  const auto again = run_rn_table(parse_equation("1,1"), options);
  CHECK(rn_table_csv(parse_equation("1,1"), rows) == rn_table_csv(parse_equation("1,1"), again));
  CHECK(rn_table_csv(parse_equation("1,1"), rows).rfind("eq,N,size,exact,nodes_explored,witness\n\"1,1\",3,3,true,", 0) == 0);
}

TEST_CASE("R(N) table falls back to heuristic rows") {
  RnTableOptions options;
  options.N_min = 10;
  options.N_max = 14;
  options.budget = 1;
  options.trials = 5;
  const auto eq = parse_equation("1,1,1");
  const auto rows = run_rn_table(eq, options);
  std::int64_t previous = 0;
  for (const auto& row : rows) {
    CHECK_FALSE(row.exact);
    CHECK(row.size >= previous);
    CHECK(is_solution_free(row.witness, eq));
    previous = row.size;
  }
  CHECK_THROWS_AS(run_rn_table(eq, {5, 4}), ValidationError);
}

TEST_CASE("inequality trials are clean and reproducible") {
  const auto summary = run_inequality_trials(60, 9);
  CHECK(summary.ok());
  CHECK(summary.triangle.run == 60);
  CHECK(summary.plunnecke.run == 60);
  CHECK(summary.cauchy_schwarz.run == 60);
  CHECK(summary.dilate_inclusion.run == 60);
  CHECK(dump(to_json(summary)) == dump(to_json(run_inequality_trials(60, 9))));
  CHECK_THROWS_AS(run_inequality_trials(0, 1), ValidationError);
}

TEST_CASE("random subsets are never empty") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_subset(rng, 10, 0.0);
    CHECK(s.size() == 1);
    CHECK(s.min() >= 1);
    CHECK(s.max() <= 10);
  }
}

TEST_CASE("json renderings") {
  CHECK(round_real(0.1 + 0.2) == 0.3);
  const auto report = run_bound_report(parse_equation("1,1"), {make_set({1, 2, 5, 7}, 7)});
  REQUIRE(report.size() == 1);
  const auto j = to_json(report[0]);
  CHECK(j["E"] == 28);
  CHECK(j["upper"] == 96);
  CHECK(j["lower_numerator"] == 256);
  CHECK(j["lower_holds"] == true);

  const auto header = ruzsa_header({2, 3, 1728}, 8);
  CHECK(dump(header) ==
        "{\"d\":2,\"k\":3,\"base\":12,\"N\":1728,\"size\":8,\"predicted_exponent\":0.278942945651}\n");

  SearchResult result;
  result.size = 2;
  result.witness = make_set({1, 2}, 2);
  result.time_ms = 5;
  const auto eq = parse_equation("1,1");
  CHECK_FALSE(to_json(result, 2, eq, false).contains("time_ms"));
  CHECK(to_json(result, 2, eq, true)["time_ms"] == 5);
}
