#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "shrinker/error.hpp"
#include "shrinker/harmonic_family.hpp"
#include "shrinker/quadrature.hpp"
#include "shrinker/special_functions.hpp"

using namespace shrinker;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<PolynomialMode> all_modes(int k, int max_degree) {
  std::vector<PolynomialMode> out;
  for (int d = 0; d <= max_degree; ++d) {
    for (int i = 0; i < angular_basis_size(k, d); ++i) {
      out.push_back({d, i});
    }
  }
  return out;
}

double angular_k2(const PolynomialMode& m, double th) {
  const double w[2] = {std::cos(th), std::sin(th)};
  return angular_value(2, m, w);
}

double angular_k3(const PolynomialMode& m, double th, double ph) {
  const double w[3] = {std::cos(th), std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph)};
  return angular_value(3, m, w);
}
}  // namespace

TEST_CASE("u = y1 evaluates to its coordinate") {
  const RigidShrinker g3 = RigidShrinker::gaussian(3);
  const HarmonicCombination u = HarmonicCombination::coordinate_y1(3);
  CHECK(u.terms().size() == 1);
  CHECK(u.terms()[0].coefficient == doctest::Approx(std::sqrt(4.0 * kPi / 3.0)).epsilon(1e-15));
  CHECK(evaluate(g3, u, Point{{2.0, 0.0, 0.0}, {}}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(evaluate(g3, u, Point{{-0.7, 1.0, 3.0}, {}}) == doctest::Approx(-0.7).epsilon(1e-14));
  for (int k = 1; k <= 6; ++k) {
    const RigidShrinker m = RigidShrinker::gaussian(k);
    const HarmonicCombination v = HarmonicCombination::coordinate_y1(k);
    std::vector<double> y(k, 0.4);
    y[0] = 1.3;
    CHECK(evaluate(m, v, Point{y, {}}) == doctest::Approx(1.3).epsilon(1e-14));
    CHECK(y1_coefficient(k) == doctest::Approx(std::sqrt(unit_sphere_area(k) / k)).epsilon(1e-15));
  }
}

TEST_CASE("constant and zero functions") {
  const RigidShrinker c = RigidShrinker::cylinder(2, 2);
  const HarmonicCombination one = HarmonicCombination::constant(2, 1.0);
  CHECK(evaluate(c, one, Point{{5.0, -1.0}, {}}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.constant_coefficient() == doctest::Approx(std::sqrt(2.0 * kPi)));
  CHECK(growth_order(one) == 0.0);
  const HarmonicCombination zero;
  CHECK(zero.is_zero());
  CHECK(zero.max_degree() == -1);
  CHECK_THROWS_AS(growth_order(zero), DomainError);
  CHECK(evaluate(c, zero, Point{{1.0, 1.0}, {}}) == 0.0);
  CHECK(HarmonicCombination::single(PolynomialMode{3, 0}, 0.0).is_zero());
}

TEST_CASE("growth order is half the top degree and ignores scaling") {
  const HarmonicCombination u = parse_modes("poly:d=0,c=2;poly:d=3,idx=1,c=-0.5;poly:d=1,c=1");
  CHECK(growth_order(u) == 1.5);
  CHECK(u.max_degree() == 3);
  CHECK(u.min_degree() == 0);
  for (double s : {1e-6, -3.0, 1e4}) {
    CHECK(growth_order(u.scaled(s)) == 1.5);
  }
  CHECK(growth_order(parse_modes("poly:d=3,idx=1,c=0;poly:d=2")) == 1.0);
  CHECK(std::isinf(growth_order(parse_modes("exp:j=1,parity=even"))));
  CHECK(u.plus(u.scaled(-1.0)).without_zero_terms().is_zero());
}

TEST_CASE("harmonic polynomial dimensions") {
  CHECK(homogeneous_harmonic_dimension(3, 0) == 1);
  CHECK(homogeneous_harmonic_dimension(3, 4) == 9);
  CHECK(homogeneous_harmonic_dimension(2, 5) == 2);
  CHECK(homogeneous_harmonic_dimension(1, 1) == 1);
  CHECK(homogeneous_harmonic_dimension(1, 2) == 0);
  CHECK(homogeneous_harmonic_dimension(4, 2) == 9);
  const RigidShrinker g3 = RigidShrinker::gaussian(3);
  const unsigned long long expected[] = {1, 4, 9, 16, 25};
  for (int d = 0; d <= 4; ++d) {
    CHECK(dim_poly_space(g3, d) == expected[d]);
  }
  CHECK(dim_poly_space(RigidShrinker::cylinder(2, 1), 7) == 2);
  CHECK(dim_poly_space(RigidShrinker::gaussian(2), 3) == 7);
  CHECK(dim_poly_space(RigidShrinker::gaussian(5), 40) > 0);
  CHECK(angular_basis_size(2, 3) == 2);
  CHECK(angular_basis_size(3, 3) == 7);
  CHECK(angular_basis_size(1, 2) == 0);
  CHECK(angular_basis_size(4, 2) == 1);
}

TEST_CASE("every constructed mode is harmonic") {
  for (int k = 1; k <= 5; ++k) {
    const RigidShrinker m = RigidShrinker::gaussian(k);
    for (const PolynomialMode& mode : all_modes(k, 6)) {
      const IdentityEntry e = check_harmonicity(m, HarmonicCombination::single(mode), 20, 11);
      CHECK_MESSAGE(e.verdict == Verdict::pass, "k=" << k << " d=" << mode.degree << " idx=" << mode.angular_index);
    }
  }
  const IdentityEntry e =
      check_harmonicity(RigidShrinker::cylinder(2, 1), parse_modes("poly:d=1;exp:j=1,parity=odd,c=2"), 20, 3);
  CHECK(e.verdict == Verdict::pass);
}

TEST_CASE("angular functions are orthonormal on S^1 and S^2") {
  const QuadratureOptions opts{1e-13, 1e-15, 20000};
  const auto m2 = all_modes(2, 4);
  for (std::size_t i = 0; i < m2.size(); ++i) {
    for (std::size_t j = i; j < m2.size(); ++j) {
      const double v =
          integrate([&](double th) { return angular_k2(m2[i], th) * angular_k2(m2[j], th); }, 0.0, 2.0 * kPi, opts)
              .value;
      CHECK(std::abs(v - (i == j ? 1.0 : 0.0)) <= 1e-10);
    }
  }
  const auto m3 = all_modes(3, 3);
  for (std::size_t i = 0; i < m3.size(); ++i) {
    for (std::size_t j = i; j < m3.size(); ++j) {
      const auto inner = [&](double th) {
        return std::sin(th) *
               integrate([&](double ph) { return angular_k3(m3[i], th, ph) * angular_k3(m3[j], th, ph); }, 0.0,
                         2.0 * kPi, opts)
                   .value;
      };
      const double v = integrate(inner, 0.0, kPi, opts).value;
      CHECK_MESSAGE(std::abs(v - (i == j ? 1.0 : 0.0)) <= 1e-10, "modes " << i << "," << j);
    }
  }
}

TEST_CASE("zonal harmonics in rank >= 4 have unit L2 norm") {
  const QuadratureOptions opts{1e-13, 1e-15, 20000};
  for (int k = 4; k <= 6; ++k) {
    for (int d = 0; d <= 5; ++d) {
      const PolynomialMode mode{d, 0};
      // the zonal function depends on ω_1 = cos θ only; weight sin^{k-2} θ
      const double v = integrate(
                           [&](double th) {
                             std::vector<double> w(k, 0.0);
                             w[0] = std::cos(th);
                             w[1] = std::sin(th);
                             const double y = angular_value(k, mode, w);
                             return y * y * std::pow(std::sin(th), k - 2);
                           },
                           0.0, kPi, opts)
                           .value *
                       unit_sphere_area(k - 1);
      CHECK_MESSAGE(std::abs(v - 1.0) <= 1e-10, "k=" << k << " d=" << d);
    }
  }
}

TEST_CASE("k = 1 basis is 1/sqrt2 and sign/sqrt2") {
  const double plus[1] = {1.0};
  const double minus[1] = {-1.0};
  CHECK(angular_value(1, {0, 0}, plus) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(angular_value(1, {1, 0}, minus) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK_THROWS_AS(validate_for(RigidShrinker::gaussian(1), parse_modes("poly:d=2")), DomainError);
  CHECK_THROWS_AS(validate_for(RigidShrinker::gaussian(2), parse_modes("poly:d=2,idx=2")), DomainError);
  CHECK_THROWS_AS(validate_for(RigidShrinker::gaussian(4), parse_modes("poly:d=2,idx=1")), DomainError);
}

TEST_CASE("sup over a sublevel set matches brute-force sampling") {
  const RigidShrinker g3 = RigidShrinker::gaussian(3);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const PolynomialMode& mode : all_modes(3, 4)) {
    const HarmonicCombination u = HarmonicCombination::single(mode, -1.7);
    const double t = 0.8;
    const double sup = sup_on_sublevel(u, g3, t);
    double sampled = 0.0;
    const double rho = rho_from_t(t);
    for (int i = 0; i < 20000; ++i) {
      const double z = 2.0 * unif(gen) - 1.0;
      const double ph = 2.0 * kPi * unif(gen);
      const double s = std::sqrt(1.0 - z * z);
      sampled = std::max(sampled, std::abs(evaluate(g3, u, Point{{rho * z, rho * s * std::cos(ph), rho * s * std::sin(ph)}, {}})));
    }
    CHECK(sampled <= sup * (1.0 + 1e-12));
    CHECK(sampled >= 0.98 * sup);
  }
  const HarmonicCombination mixed = parse_modes("poly:d=0,c=3;poly:d=1,c=0.1");
  CHECK(inf_on_sublevel(mixed, g3, 0.25) > 0.0);
  CHECK(inf_on_sublevel(mixed, g3, 0.25) <= sup_on_sublevel(mixed, g3, 0.25));
}

TEST_CASE("mode descriptors round-trip") {
  const std::string d = "poly:d=2,idx=3,c=-0.25;exp:j=1,parity=odd,c=2;poly:d=0,c=1";
  const HarmonicCombination u = parse_modes(d);
  CHECK(u.terms().size() == 3);
  const HarmonicCombination v = parse_modes(u.to_descriptor());
  REQUIRE(v.terms().size() == u.terms().size());
  for (std::size_t i = 0; i < u.terms().size(); ++i) {
    CHECK(v.terms()[i].coefficient == u.terms()[i].coefficient);
    CHECK(v.terms()[i].mode == u.terms()[i].mode);
  }
  CHECK(u.to_json()[1]["parity"] == "odd");
  CHECK(parse_modes("poly:d=4").terms()[0].coefficient == 1.0);
}

TEST_CASE("mode descriptor errors carry columns") {
  const auto column_of = [](const std::string& d) {
    try {
      parse_modes(d);
    } catch (const ParseError& e) {
      return static_cast<long>(e.column());
    }
    return -1L;
  };
  CHECK(column_of("pol:d=1") == 1);
  CHECK(column_of("poly:d=-1") == 8);
  CHECK(column_of("poly:d=1,d=2") > 0);
  CHECK(column_of("poly:idx=1") > 0);
  CHECK(column_of("exp:j=1") > 0);
  CHECK(column_of("exp:j=0,parity=even") == 7);
  CHECK(column_of("exp:j=1,parity=sideways") == 16);
  CHECK(column_of("poly:d=1;poly:d=1") == 10);
  CHECK(column_of("poly:d=1,q=2") == 10);
  CHECK(column_of("poly:d=1,c=abc") > 0);
}

TEST_CASE("exponential modes use the sphere eigenfunction hook") {
  const RigidShrinker c = RigidShrinker::cylinder(2, 1);
  const HarmonicCombination even = parse_modes("exp:j=1,parity=even");
  const double vn = c.factor_volume();
  const double theta[3] = {1.0, 0.0, 0.0};
  const double phi1 = std::sqrt(3.0 / vn);
  CHECK(evaluate(c, even, Point{{0.5}, {theta, theta + 3}}) == doctest::Approx(phi1 * std::cosh(0.5)).epsilon(1e-14));
  CHECK(evaluate(c, parse_modes("exp:j=1,parity=odd"), Point{{0.5}, {theta, theta + 3}}) ==
        doctest::Approx(phi1 * std::sinh(0.5)).epsilon(1e-14));
  CHECK(fiber_square_at_origin(c, even) == doctest::Approx(1.0).epsilon(1e-14));
  const double y[1] = {2.0};
  CHECK(fiber_square(c, even, y) == doctest::Approx(std::cosh(2.0) * std::cosh(2.0)).epsilon(1e-14));
  CHECK(sup_on_sublevel(even, c, 1.0) == doctest::Approx(phi1 * std::cosh(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(validate_for(RigidShrinker::gaussian(1), even), DomainError);
  CHECK_THROWS_AS(validate_for(RigidShrinker::cylinder(2, 2), even), DomainError);
  CHECK_FALSE(even.is_polynomial());
}
