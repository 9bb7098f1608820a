#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "shrinker/harmonic_family.hpp"
#include "shrinker/quadrature.hpp"
#include "shrinker/report.hpp"
#include "shrinker/rigid_shrinker.hpp"

namespace shrinker {

enum class Engine { closed_form, quadrature };

std::string_view to_string(Engine engine);
/// Accepts "closed", "closed-form", "closed_form" and "quadrature".
Engine parse_engine(std::string_view name);

namespace tolerance {
inline constexpr double kDerivativeIdentity = 1e-6;
inline constexpr double kClosedFormIdentity = 1e-12;
inline constexpr double kEngineAgreement = 1e-8;
inline constexpr double kPureModeClosed = 1e-10;
inline constexpr double kPureModeQuadrature = 1e-7;
inline constexpr double kMonotoneSlack = 1e-10;
inline constexpr double kInequalitySlack = 1e-12;
inline constexpr double kLimit = 1e-3;
inline constexpr double kMonteCarloSigmas = 4.0;
}  // namespace tolerance

struct FrequencyOptions {
  /// tol_abs is applied to each normalised radial integral (in s = r/ρ).
  QuadratureOptions quadrature{};
  double rel_step = 1e-3;
};

/// One polynomial mode's contribution c_H t^e to H and c_J t^e to J.
struct ModeIntegral {
  PolynomialMode mode;
  double coefficient = 0.0;
  double H_coefficient = 0.0;
  double J_coefficient = 0.0;
  double exponent = 0.0;
};

/// Closed-form Beta reduction of H and J for polynomial combinations:
///   H_i = V_N c² 2^{2d+k-1} B(d+k/2, α+1) t^{d+k/2+α}
///   J_i = V_N c² d(2d+k-2) 2^{2d+k-3} B(d+k/2-1, α+2) t^{d+k/2+α}
class ModeIntegralTable {
public:
  /// Throws DomainError if u has an exponential mode with nonzero coefficient.
  ModeIntegralTable(const RigidShrinker& model, const HarmonicCombination& u, double alpha);

  const std::vector<ModeIntegral>& entries() const { return entries_; }
  double alpha() const { return alpha_; }

  double H(double t) const;
  double J(double t) const;
  double H_prime(double t) const;
  nlohmann::json to_json() const;

private:
  double alpha_;
  std::vector<ModeIntegral> entries_;
};

/// H, J, h and N for one (model, u, α) by a chosen engine.
///   H(t) = ∫_{D_t} u² (t-f)^α,  J(t) = ∫_{D_t} |∇u|² (t-f)^{α+1},
///   h(t) = ∫_{D_t} u²,  N = J/H (J/h when α = 0).
class FrequencyCalculator {
public:
  FrequencyCalculator(RigidShrinker model, HarmonicCombination u, double alpha, Engine engine,
                      FrequencyOptions options = {});

  const RigidShrinker& model() const { return model_; }
  const HarmonicCombination& u() const { return u_; }
  double alpha() const { return alpha_; }
  Engine engine() const { return engine_; }
  const FrequencyOptions& options() const { return options_; }

  /// ∫_{D_t} u² (t-f)^a dv.
  double weighted_square(double t, double a) const;
  /// ∫_{D_t} |∇u|² (t-f)^a dv.
  double weighted_gradient(double t, double a) const;

  double H(double t) const;
  double J(double t) const;
  double h(double t) const;
  /// Throws DomainError for the zero function.
  double N(double t) const;
  /// Analytic for the closed-form engine, Richardson differences otherwise.
  double H_prime(double t) const;
  double h_prime(double t) const;

  nlohmann::json params() const;

private:
  void require_positive(double t) const;

  RigidShrinker model_;
  HarmonicCombination u_;
  double alpha_;
  Engine engine_;
  FrequencyOptions options_;
};

struct FrequencySample {
  double t = 0.0;
  double H = 0.0;
  double J = 0.0;
  double h = 0.0;
  double N = 0.0;
};

struct FrequencyProfile {
  nlohmann::json model;
  HarmonicCombination u;
  double alpha = 0.0;
  Engine engine = Engine::closed_form;
  std::vector<FrequencySample> samples;
};

FrequencyProfile compute_profile(const FrequencyCalculator& calc, std::span<const double> grid);

/// H' = (α+n/2-R)/t · H + 2/((α+1)t) · J, relative residual per grid point.
IdentityEntry check_H_ode(const FrequencyCalculator& calc, std::span<const double> grid);

/// d/dt ln H = (α+n/2-R)/t + 2N/((α+1)t).
IdentityEntry check_log_derivative(const FrequencyCalculator& calc, std::span<const double> grid);

/// t^{-2m/(α+1)} H(t) strictly increasing on [t1, t2], m = inf N over the
/// window. Skipped when m is not positive.
IdentityEntry check_P1(const FrequencyCalculator& calc, double t1, double t2, std::size_t points = 40);

/// t^{√n-1} N(t) nondecreasing along the grid (α ≥ 2). Violations are kept in
/// the entry details as counterexamples.
IdentityEntry check_monotone_frequency(const FrequencyCalculator& calc, std::span<const double> grid);

/// α = 0: N = -(n/2-R)/2 + t h'/(2h).
IdentityEntry check_nlim_identity(const FrequencyCalculator& calc, std::span<const double> grid);

/// H(t) ≤ t^α h(t) and h(t) ≤ H(s)/(s-t)^α for grid points t < s.
IdentityEntry check_mass_bounds(const FrequencyCalculator& calc, std::span<const double> grid);

/// H, J and h from both engines agree (polynomial u only).
IdentityEntry check_engine_agreement(const RigidShrinker& model, const HarmonicCombination& u, double alpha,
                                     std::span<const double> grid, const FrequencyOptions& options = {});

/// N ≡ d(α+1)/2 for a single polynomial mode of degree d.
IdentityEntry check_pure_mode_law(const FrequencyCalculator& calc, std::span<const double> grid);

/// Monte Carlo estimate of H(t) against the calculator's value, residual in
/// standard errors. Needs k ≤ 3.
IdentityEntry check_monte_carlo(const FrequencyCalculator& calc, double t, const MonteCarloOptions& mc);

nlohmann::json grid_json(std::span<const double> grid);

}  // namespace shrinker
