#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "shrinker/error.hpp"
#include "shrinker/special_functions.hpp"

using namespace shrinker;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("log_gamma matches lgamma on [0.5, 50]") {
  double worst = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = 0.5 + 49.5 * i / 4000.0;
    const double expected = std::lgamma(x);
    worst = std::max(worst, std::abs(log_gamma(x) - expected) / std::max(1.0, std::abs(expected)));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("gamma at integers and half integers") {
  double factorial = 1.0;
  for (int n = 1; n <= 20; ++n) {
    CHECK(gamma_function(n) == doctest::Approx(factorial).epsilon(1e-13));
    factorial *= n;
  }
  CHECK(gamma_function(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(gamma_function(1.5) == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-14));
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(2.0) == 0.0);
}

TEST_CASE("beta worked values") {
  CHECK(std::abs(beta(1.5, 3.0) / (16.0 / 105.0) - 1.0) <= 1e-13);
  CHECK(std::abs(beta(1.5, 3.0) - 0.15238095238095238) <= 1e-15);
  CHECK(std::abs(beta(1.0, 1.0) - 1.0) <= 1e-15);
  CHECK(std::abs(beta(2.5, 3.0) / (16.0 / 315.0) - 1.0) <= 1e-13);
  CHECK(std::abs(beta(0.5, 0.5) / kPi - 1.0) <= 1e-13);
}

TEST_CASE("beta symmetry and agreement with lgamma") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> dist(0.5, 30.0);
  for (int i = 0; i < 500; ++i) {
    const double a = dist(gen);
    const double b = dist(gen);
    CHECK(beta(a, b) == doctest::Approx(beta(b, a)).epsilon(1e-14));
    const double via_lgamma = std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    CHECK(beta(a, b) == doctest::Approx(via_lgamma).epsilon(1e-11));
  }
}

TEST_CASE("unit ball and sphere measures") {
  CHECK(unit_ball_volume(0) == 1.0);
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(kPi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0));
  CHECK(unit_ball_volume(4) == doctest::Approx(kPi * kPi / 2.0));
  CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * kPi));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * kPi));
  CHECK(unit_sphere_area(4) == doctest::Approx(2.0 * kPi * kPi));
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(10, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(4, -1) == 0);
  CHECK(binomial(-1, 0) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
}

TEST_CASE("nonpositive arguments are rejected") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(beta(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(beta(1.0, -2.0), DomainError);
}
