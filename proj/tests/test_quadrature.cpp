#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "shrinker/error.hpp"
#include "shrinker/numerics.hpp"
#include "shrinker/quadrature.hpp"
#include "shrinker/special_functions.hpp"

using namespace shrinker;

namespace {

constexpr double kPi = std::numbers::pi;

double closed_radial(double p, double a, double t) {
  return std::pow(2.0, p) * std::pow(t, 0.5 * (p + 1.0) + a) * beta(0.5 * (p + 1.0), a + 1.0);
}

}  // namespace

TEST_CASE("radial corpus") {
  const auto r1 = integrate_radial({2.0, 2.0, {}, 1.0});
  CHECK(std::abs(r1.value - 64.0 / 105.0) <= 1e-14);
  CHECK(std::abs(integrate_radial({4.0, 2.0, {}, 1.0}).value - 256.0 / 315.0) <= 1e-14);
  CHECK(std::abs(integrate_radial({0.0, 0.0, {}, 1.0}).value - 2.0) <= 1e-15);
  // frozen oracle values
  CHECK(std::abs(r1.value - 0.6095238095238095) <= 1e-15);
  CHECK(std::abs(integrate_radial({4.0, 2.0, {}, 1.0}).value - 0.8126984126984127) <= 1e-15);
  CHECK(r1.error_estimate >= 0.0);
  CHECK(r1.evaluations > 0);
}

TEST_CASE("integer corpus p <= 14, a <= 6 against the Beta closed form") {
  for (int p = 0; p <= 14; ++p) {
    for (int a = 0; a <= 6; ++a) {
      for (double t : {0.3, 1.0, 7.0}) {
        const double exact = closed_radial(p, a, t);
        const double value = integrate_radial({double(p), double(a), {}, t}).value;
        CAPTURE(p);
        CAPTURE(a);
        CAPTURE(t);
        CHECK(std::abs(value - exact) <= 1e-10 * exact);
      }
    }
  }
}

TEST_CASE("noninteger weights and conservative error estimates") {
  int covered = 0;
  int total = 0;
  for (int p = 0; p <= 14; ++p) {
    for (double a : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.7, 4.5, 6.0}) {
      for (double t : {0.1, 1.0, 10.0}) {
        const double exact = closed_radial(p, a, t);
        const QuadratureResult r = integrate_radial({double(p), a, {}, t}, {1e-11, 1e-30, 10000});
        CHECK(std::abs(r.value - exact) <= 1e-10 * exact);
        ++total;
        covered += std::abs(r.value - exact) <= r.error_estimate ? 1 : 0;
      }
    }
  }
  CHECK(static_cast<double>(covered) >= 0.99 * total);
}

TEST_CASE("integrate on plain intervals") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi).value == doctest::Approx(2.0).epsilon(1e-13));
  const double bp[] = {0.5};
  CHECK(integrate([](double x) { return std::abs(x - 0.5); }, 0.0, 1.0, {}, bp).value ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0).value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("exhausted panel budget is reported") {
  QuadratureOptions tight;
  tight.max_panels = 8;
  tight.tol_rel = 1e-14;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-4)); }, 0.0, 1.0, tight), QuadratureError);
}

TEST_CASE("bad radial input is rejected") {
  CHECK_THROWS_AS(integrate_radial({1.0, 1.0, {}, 0.0}), DomainError);
  CHECK_THROWS_AS(integrate_radial({-1.0, 1.0, {}, 1.0}), DomainError);
}

TEST_CASE("Monte Carlo ball integrals") {
  const auto one = [](std::span<const double>) { return 1.0; };
  const QuadratureResult vol = ball_monte_carlo(one, 0.0, 3, 1.0, {200000, 3});
  CHECK(std::abs(vol.value - 32.0 * kPi / 3.0) <= 3.0 * vol.error_estimate);
  const QuadratureResult weighted = ball_monte_carlo(one, 2.0, 3, 1.0, {200000, 5});
  CHECK(std::abs(weighted.value - 256.0 * kPi / 105.0) <= 3.0 * weighted.error_estimate);
  const QuadratureResult zero = ball_monte_carlo([](std::span<const double>) { return 0.0; }, 2.0, 2, 1.0, {10000, 1});
  CHECK(zero.value == 0.0);
  CHECK(zero.error_estimate == 0.0);
}

TEST_CASE("Monte Carlo is deterministic under a fixed seed") {
  const auto f = [](std::span<const double> y) { return y[0] * y[0]; };
  const QuadratureResult a = ball_monte_carlo(f, 1.0, 2, 2.0, {20000, 99});
  const QuadratureResult b = ball_monte_carlo(f, 1.0, 2, 2.0, {20000, 99});
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  const QuadratureResult c = ball_monte_carlo(f, 1.0, 2, 2.0, {20000, 100});
  CHECK(a.value != c.value);
}

TEST_CASE("Monte Carlo error decays like samples^-1/2") {
  const auto one = [](std::span<const double>) { return 1.0; };
  const double exact = 256.0 * kPi / 105.0;
  std::vector<double> sizes, rms, stderrs;
  for (std::size_t n : {10000u, 40000u, 160000u, 640000u}) {
    double sum_sq = 0.0;
    double se = 0.0;
    constexpr int kSeeds = 24;
    for (int s = 0; s < kSeeds; ++s) {
      const QuadratureResult r = ball_monte_carlo(one, 2.0, 3, 1.0, {n, 1000u + static_cast<unsigned>(s)});
      sum_sq += (r.value - exact) * (r.value - exact);
      se += r.error_estimate;
    }
    sizes.push_back(static_cast<double>(n));
    rms.push_back(std::sqrt(sum_sq / kSeeds));
    stderrs.push_back(se / kSeeds);
  }
  CHECK(std::abs(loglog_slope(sizes, rms) + 0.5) <= 0.1);
  CHECK(std::abs(loglog_slope(sizes, stderrs) + 0.5) <= 0.01);
}

TEST_CASE("Monte Carlo preconditions") {
  const auto one = [](std::span<const double>) { return 1.0; };
  CHECK_THROWS_AS(ball_monte_carlo(one, 0.0, 4, 1.0, {10000, 1}), DomainError);
  CHECK_THROWS_AS(ball_monte_carlo(one, 0.0, 3, 1.0, {9999, 1}), DomainError);
  CHECK_THROWS_AS(ball_monte_carlo(one, 0.0, 3, -1.0, {10000, 1}), DomainError);
}
