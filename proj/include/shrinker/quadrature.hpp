#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace shrinker {

struct QuadratureOptions {
  double tol_rel = 1e-10;
  double tol_abs = 1e-14;
  int max_panels = 10000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  ///< nonnegative; a standard error for Monte Carlo
  long evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// Panels with the largest |K15 - G7| are bisected until the summed estimate
/// drops below max(tol_rel·|value|, tol_abs). `breakpoints` (inside (a, b))
/// seed the initial partition. Throws QuadratureError when the panel budget
/// runs out first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {},
                           std::span<const double> breakpoints = {});

/// ∫_0^{2√t} r^power (t - r²/4)^weight_exponent · profile(r) dr.
///
/// The profile is optional (treated as 1 when empty). Integration runs in
/// s = r / (2√t) so the weight becomes t^a (1 - s²)^a on [0, 1].
struct RadialIntegrand {
  double power = 0.0;
  double weight_exponent = 0.0;
  std::function<double(double)> profile;
  double t = 1.0;
};

QuadratureResult integrate_radial(const RadialIntegrand& g, const QuadratureOptions& options = {});

struct MonteCarloOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

/// Estimates ∫_{|y| ≤ 2√t} F(y) (t - |y|²/4)^alpha dy over the Euclidean ball
/// in R^k (k ≤ 3) by rejection sampling with a seeded std::mt19937_64. The
/// error estimate is the standard error of the mean.
QuadratureResult ball_monte_carlo(const std::function<double(std::span<const double>)>& fiber_integrand,
                                  double alpha, int k, double t, const MonteCarloOptions& options);

}  // namespace shrinker
