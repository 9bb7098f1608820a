#include <doctest.h>

#include <cmath>
#include <limits>

#include "shrinker/error.hpp"
#include "shrinker/numerics.hpp"
#include "shrinker/report.hpp"

using namespace shrinker;

TEST_CASE("default scan grid has 160 log-spaced points") {
  const auto grid = log_grid_per_decade(1e-2, 1e2, 40.0);
  CHECK(grid.size() == 160);
  CHECK(grid.front() == 1e-2);
  CHECK(grid.back() == 1e2);
  CHECK_NOTHROW(validate_grid(grid, 2));
  const double ratio = grid[1] / grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i] / grid[i - 1] == doctest::Approx(ratio).epsilon(1e-12));
  }
}

TEST_CASE("grid validation") {
  const std::vector<double> single = {1.0};
  CHECK_THROWS_AS(validate_grid(single, 2), DomainError);
  const std::vector<double> unsorted = {1.0, 0.5};
  CHECK_THROWS_AS(validate_grid(unsorted), DomainError);
  const std::vector<double> negative = {-1.0, 0.5};
  CHECK_THROWS_AS(validate_grid(negative), DomainError);
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 4), DomainError);
  CHECK(linear_grid(1.0, 4.0, 4) == std::vector<double>{1.0, 2.0, 3.0, 4.0});
}

TEST_CASE("Richardson log-stencil derivative") {
  for (double p : {0.5, 1.0, 3.7, 8.0}) {
    for (double t : {1e-3, 0.7, 50.0}) {
      const double d = log_stencil_derivative([p](double s) { return std::pow(s, p); }, t);
      CHECK(d == doctest::Approx(p * std::pow(t, p - 1.0)).epsilon(1e-10));
    }
  }
  CHECK(log_stencil_derivative([](double s) { return std::exp(s); }, 2.0) ==
        doctest::Approx(std::exp(2.0)).epsilon(1e-10));
}

TEST_CASE("log-log slope") {
  const std::vector<double> ts = {0.1, 1.0, 3.0, 40.0};
  std::vector<double> vs;
  for (double t : ts) {
    vs.push_back(5.0 * std::pow(t, 1.5));
  }
  CHECK(loglog_slope(ts, vs) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK_THROWS_AS(loglog_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("verdict follows residual and tolerance") {
  CHECK(judged("a", {}, 1e-7, 1e-6, "x").verdict == Verdict::pass);
  CHECK(judged("a", {}, 1e-6, 1e-6, "x").verdict == Verdict::pass);
  CHECK(judged("a", {}, 2e-6, 1e-6, "x").verdict == Verdict::fail);
  CHECK(judged("a", {}, std::numeric_limits<double>::quiet_NaN(), 1.0, "x").verdict == Verdict::fail);
  const IdentityEntry s = skipped("b", {}, "precondition", "x");
  CHECK(s.verdict == Verdict::skipped);
  CHECK(s.reason == "precondition");
}

TEST_CASE("report JSON is sorted and versioned") {
  IdentityReport report;
  report.add(judged("z.last", {{"k", 1}}, 0.0, 1.0, "e"));
  report.add(judged("a.first", {{"k", 2}}, 0.0, 1.0, "e"));
  report.add(judged("a.first", {{"k", 1}}, 2.0, 1.0, "e"));
  report.add(skipped("m.mid", {}, "why", "e"));
  IdentityEntry inf = judged("n.inf", {}, std::numeric_limits<double>::infinity(), 1.0, "e");
  report.add(inf);
  const nlohmann::json j = report.to_json({{"seed", 3}});
  CHECK(j["schema_version"] == 1);
  CHECK(j["entries"][0]["id"] == "a.first");
  CHECK(j["entries"][0]["params"]["k"] == 1);
  CHECK(j["entries"][1]["params"]["k"] == 2);
  CHECK(j["entries"][4]["id"] == "z.last");
  CHECK(j["entries"][2]["reason"] == "why");
  CHECK(j["entries"][3]["residual"].is_null());
  CHECK(j["summary"]["fail"] == 2);
  CHECK(j["run"]["seed"] == 3);
  CHECK_FALSE(report.all_passed());
  CHECK(report.summary_table().find("pass=2 fail=2 skipped=1") != std::string::npos);
}
