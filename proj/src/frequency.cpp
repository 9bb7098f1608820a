#include "shrinker/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shrinker/error.hpp"
#include "shrinker/numerics.hpp"
#include "shrinker/special_functions.hpp"

namespace shrinker {
namespace {

double eigen_root(const RigidShrinker& model, const ExponentialMode& mode) {
  return std::sqrt(model.factor().eigenvalues()[static_cast<std::size_t>(mode.eigen_index)]);
}

// c_H t^e for ∫ (c r^d Y)² (t-f)^a.
std::pair<double, double> closed_square_term(const RigidShrinker& model, const PolynomialMode& mode, double c,
                                             double a) {
  const int k = model.euclidean_rank();
  const int d = mode.degree;
  const double coefficient = model.factor_volume() * c * c * std::pow(2.0, 2 * d + k - 1) * beta(d + 0.5 * k, a + 1.0);
  return {coefficient, d + 0.5 * k + a};
}

// c_J t^e for ∫ |∇(c r^d Y)|² (t-f)^a; zero for d = 0.
std::pair<double, double> closed_gradient_term(const RigidShrinker& model, const PolynomialMode& mode, double c,
                                               double a) {
  const int k = model.euclidean_rank();
  const int d = mode.degree;
  if (d == 0) {
    return {0.0, 0.5 * k - 1.0 + a};
  }
  const double coefficient = model.factor_volume() * c * c * d * (2 * d + k - 2) * std::pow(2.0, 2 * d + k - 3) *
                             beta(d + 0.5 * k - 1.0, a + 1.0);
  return {coefficient, d + 0.5 * k - 1.0 + a};
}

const PolynomialMode& polynomial_or_throw(const Term& term) {
  if (const auto* mode = std::get_if<PolynomialMode>(&term.mode)) {
    return *mode;
  }
  throw DomainError("closed-form engine: exponential modes have no Beta reduction; use the quadrature engine");
}

// Radial integral with tol_abs measured on the dimensionless s-integral.
double radial(double power, double a, double t, std::function<double(double)> profile,
              const QuadratureOptions& options) {
  QuadratureOptions scaled = options;
  const double rho = rho_from_t(t);
  scaled.tol_abs = options.tol_abs * std::pow(rho, power + 1.0) * std::pow(t, a);
  return integrate_radial(RadialIntegrand{power, a, std::move(profile), t}, scaled).value;
}

nlohmann::json model_u_params(const RigidShrinker& model, const HarmonicCombination& u, double alpha) {
  return {{"model", model.to_json()}, {"u", u.to_descriptor()}, {"alpha", alpha}};
}

}  // namespace

std::string_view to_string(Engine engine) {
  return engine == Engine::closed_form ? "closed_form" : "quadrature";
}

Engine parse_engine(std::string_view name) {
  if (name == "closed" || name == "closed-form" || name == "closed_form") {
    return Engine::closed_form;
  }
  if (name == "quadrature") {
    return Engine::quadrature;
  }
  throw DomainError("unknown engine '" + std::string(name) + "'");
}

ModeIntegralTable::ModeIntegralTable(const RigidShrinker& model, const HarmonicCombination& u, double alpha)
    : alpha_(alpha) {
  if (!(alpha >= 0.0)) {
    throw DomainError("alpha must be nonnegative");
  }
  validate_for(model, u);
  for (const Term& term : u.terms()) {
    if (term.coefficient == 0.0) {
      continue;
    }
    const PolynomialMode& mode = polynomial_or_throw(term);
    const auto [h_coefficient, exponent] = closed_square_term(model, mode, term.coefficient, alpha);
    const auto [j_coefficient, j_exponent] = closed_gradient_term(model, mode, term.coefficient, alpha + 1.0);
    (void)j_exponent;
    entries_.push_back(ModeIntegral{mode, term.coefficient, h_coefficient, j_coefficient, exponent});
  }
}

double ModeIntegralTable::H(double t) const {
  double total = 0.0;
  for (const ModeIntegral& e : entries_) {
    total += e.H_coefficient * std::pow(t, e.exponent);
  }
  return total;
}

double ModeIntegralTable::J(double t) const {
  double total = 0.0;
  for (const ModeIntegral& e : entries_) {
    total += e.J_coefficient * std::pow(t, e.exponent);
  }
  return total;
}

double ModeIntegralTable::H_prime(double t) const {
  double total = 0.0;
  for (const ModeIntegral& e : entries_) {
    total += e.H_coefficient * e.exponent * std::pow(t, e.exponent - 1.0);
  }
  return total;
}

nlohmann::json ModeIntegralTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const ModeIntegral& e : entries_) {
    rows.push_back({{"d", e.mode.degree},
                    {"idx", e.mode.angular_index},
                    {"c", e.coefficient},
                    {"H_coefficient", e.H_coefficient},
                    {"J_coefficient", e.J_coefficient},
                    {"exponent", e.exponent}});
  }
  return {{"alpha", alpha_}, {"modes", rows}};
}

FrequencyCalculator::FrequencyCalculator(RigidShrinker model, HarmonicCombination u, double alpha, Engine engine,
                                         FrequencyOptions options)
    : model_(std::move(model)), u_(std::move(u)), alpha_(alpha), engine_(engine), options_(options) {
  if (!(alpha_ >= 0.0) || !std::isfinite(alpha_)) {
    throw DomainError("alpha must be a finite nonnegative number");
  }
  validate_for(model_, u_);
  if (engine_ == Engine::closed_form && !u_.is_polynomial()) {
    throw DomainError("closed-form engine: exponential modes have no Beta reduction; use the quadrature engine");
  }
}

void FrequencyCalculator::require_positive(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("t must be positive and finite");
  }
}

double FrequencyCalculator::weighted_square(double t, double a) const {
  require_positive(t);
  const int k = model_.euclidean_rank();
  double total = 0.0;
  for (const Term& term : u_.terms()) {
    const double c = term.coefficient;
    if (c == 0.0) {
      continue;
    }
    if (engine_ == Engine::closed_form) {
      const auto [coefficient, exponent] = closed_square_term(model_, polynomial_or_throw(term), c, a);
      total += coefficient * std::pow(t, exponent);
    } else if (const auto* mode = std::get_if<PolynomialMode>(&term.mode)) {
      total += model_.factor_volume() * c * c * radial(2.0 * mode->degree + k - 1, a, t, {}, options_.quadrature);
    } else {
      const auto& mode_e = std::get<ExponentialMode>(term.mode);
      const double root = eigen_root(model_, mode_e);
      const bool even = mode_e.parity == Parity::even;
      const auto profile = [root, even](double r) {
        const double g = even ? std::cosh(root * r) : std::sinh(root * r);
        return g * g;
      };
      total += 2.0 * c * c * radial(0.0, a, t, profile, options_.quadrature);
    }
  }
  return total;
}

double FrequencyCalculator::weighted_gradient(double t, double a) const {
  require_positive(t);
  const int k = model_.euclidean_rank();
  double total = 0.0;
  for (const Term& term : u_.terms()) {
    const double c = term.coefficient;
    if (c == 0.0) {
      continue;
    }
    if (engine_ == Engine::closed_form) {
      const auto [coefficient, exponent] = closed_gradient_term(model_, polynomial_or_throw(term), c, a);
      total += coefficient * std::pow(t, exponent);
    } else if (const auto* mode = std::get_if<PolynomialMode>(&term.mode)) {
      const int d = mode->degree;
      if (d == 0) {
        continue;
      }
      // |∇(r^d Y)|² integrates over the sphere of radius r to d(2d+k-2) r^{2d+k-3}.
      total += model_.factor_volume() * c * c * d * (2 * d + k - 2) *
               radial(2.0 * d + k - 3, a, t, {}, options_.quadrature);
    } else {
      const auto& mode_e = std::get<ExponentialMode>(term.mode);
      const double root = eigen_root(model_, mode_e);
      const double mu = root * root;
      // g'² + μ g² = μ cosh(2√μ y) for both parities.
      const auto profile = [root, mu](double r) { return mu * std::cosh(2.0 * root * r); };
      total += 2.0 * c * c * radial(0.0, a, t, profile, options_.quadrature);
    }
  }
  return total;
}

double FrequencyCalculator::H(double t) const { return weighted_square(t, alpha_); }

double FrequencyCalculator::J(double t) const { return weighted_gradient(t, alpha_ + 1.0); }

double FrequencyCalculator::h(double t) const { return weighted_square(t, 0.0); }

double FrequencyCalculator::N(double t) const {
  if (u_.is_zero()) {
    throw DomainError("frequency of the zero function is undefined");
  }
  const double denominator = alpha_ == 0.0 ? h(t) : H(t);
  return J(t) / denominator;
}

double FrequencyCalculator::H_prime(double t) const {
  require_positive(t);
  if (engine_ == Engine::closed_form) {
    return ModeIntegralTable(model_, u_, alpha_).H_prime(t);
  }
  return log_stencil_derivative([this](double s) { return H(s); }, t, options_.rel_step);
}

double FrequencyCalculator::h_prime(double t) const {
  require_positive(t);
  if (engine_ == Engine::closed_form) {
    return ModeIntegralTable(model_, u_, 0.0).H_prime(t);
  }
  return log_stencil_derivative([this](double s) { return h(s); }, t, options_.rel_step);
}

nlohmann::json FrequencyCalculator::params() const {
  nlohmann::json p = model_u_params(model_, u_, alpha_);
  if (engine_ == Engine::quadrature) {
    p["tol_rel"] = options_.quadrature.tol_rel;
  }
  return p;
}

nlohmann::json grid_json(std::span<const double> grid) {
  if (grid.empty()) {
    return {{"points", 0}};
  }
  return {{"min", grid.front()}, {"max", grid.back()}, {"points", grid.size()}};
}

FrequencyProfile compute_profile(const FrequencyCalculator& calc, std::span<const double> grid) {
  validate_grid(grid);
  FrequencyProfile profile{calc.model().to_json(), calc.u(), calc.alpha(), calc.engine(), {}};
  profile.samples.reserve(grid.size());
  for (double t : grid) {
    FrequencySample s;
    s.t = t;
    s.H = calc.H(t);
    s.J = calc.J(t);
    s.h = calc.alpha() == 0.0 ? s.H : calc.h(t);
    s.N = s.J / (calc.alpha() == 0.0 ? s.h : s.H);
    profile.samples.push_back(s);
  }
  return profile;
}

namespace {

double identity_tolerance(Engine engine) {
  return engine == Engine::closed_form ? tolerance::kClosedFormIdentity : tolerance::kDerivativeIdentity;
}

nlohmann::json with_grid(nlohmann::json params, std::span<const double> grid) {
  params["grid"] = grid_json(grid);
  return params;
}

void require_nonzero(const FrequencyCalculator& calc) {
  if (calc.u().is_zero()) {
    throw DomainError("identity check needs a nonzero harmonic function");
  }
}

}  // namespace

IdentityEntry check_H_ode(const FrequencyCalculator& calc, std::span<const double> grid) {
  validate_grid(grid);
  require_nonzero(calc);
  const double alpha = calc.alpha();
  const double beta_exp = calc.model().volume_exponent();
  double worst = 0.0;
  double worst_t = grid.front();
  for (double t : grid) {
    const double lhs = calc.H_prime(t);
    const double rhs = (alpha + beta_exp) / t * calc.H(t) + 2.0 / ((alpha + 1.0) * t) * calc.J(t);
    const double residual = std::abs(lhs - rhs) / std::abs(lhs);
    if (!(residual <= worst)) {
      worst = residual;
      worst_t = t;
    }
  }
  IdentityEntry entry = judged("frequency.h_ode", with_grid(calc.params(), grid), worst,
                               identity_tolerance(calc.engine()), std::string(to_string(calc.engine())));
  entry.details = {{"worst_t", worst_t}};
  return entry;
}

IdentityEntry check_log_derivative(const FrequencyCalculator& calc, std::span<const double> grid) {
  validate_grid(grid);
  require_nonzero(calc);
  const double alpha = calc.alpha();
  const double beta_exp = calc.model().volume_exponent();
  double worst = 0.0;
  double worst_t = grid.front();
  for (double t : grid) {
    double lhs = 0.0;
    if (calc.engine() == Engine::closed_form) {
      lhs = calc.H_prime(t) / calc.H(t);
    } else {
      lhs = log_stencil_derivative([&calc](double s) { return std::log(calc.H(s)); }, t,
                                   calc.options().rel_step);
    }
    const double rhs = (alpha + beta_exp) / t + 2.0 * calc.N(t) / ((alpha + 1.0) * t);
    const double residual = std::abs(lhs - rhs) / std::abs(rhs);
    if (!(residual <= worst)) {
      worst = residual;
      worst_t = t;
    }
  }
  IdentityEntry entry = judged("frequency.log_derivative", with_grid(calc.params(), grid), worst,
                               identity_tolerance(calc.engine()), std::string(to_string(calc.engine())));
  entry.details = {{"worst_t", worst_t}};
  return entry;
}

IdentityEntry check_P1(const FrequencyCalculator& calc, double t1, double t2, std::size_t points) {
  if (!(t1 > 0.0) || !(t2 > t1)) {
    throw DomainError("check_P1: window must satisfy 0 < t1 < t2");
  }
  if (points < 2) {
    throw DomainError("check_P1: at least two window points are needed");
  }
  require_nonzero(calc);
  nlohmann::json params = calc.params();
  params["window"] = {t1, t2};
  const std::string engine(to_string(calc.engine()));

  double m = std::numeric_limits<double>::infinity();
  for (double t : log_grid(t1, t2, 4 * points)) {
    m = std::min(m, calc.N(t));
  }
  if (!(m > 0.0)) {
    IdentityEntry entry = skipped("frequency.p1", params, "inf N over the window is not positive", engine);
    entry.details = {{"m", m}};
    return entry;
  }
  const double power = -2.0 * m / (calc.alpha() + 1.0);
  const std::vector<double> grid = log_grid(t1, t2, points);
  double previous = std::pow(grid.front(), power) * calc.H(grid.front());
  // Largest relative decrease between neighbours; negative when strictly increasing.
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double current = std::pow(grid[i], power) * calc.H(grid[i]);
    worst = std::max(worst, (previous - current) / std::abs(previous));
    previous = current;
  }
  IdentityEntry entry = judged("frequency.p1", params, worst, 0.0, engine);
  entry.details = {{"m", m}, {"points", points}};
  return entry;
}

IdentityEntry check_monotone_frequency(const FrequencyCalculator& calc, std::span<const double> grid) {
  if (calc.alpha() < 2.0) {
    throw DomainError("monotone frequency check requires alpha >= 2");
  }
  validate_grid(grid, 2);
  require_nonzero(calc);
  const double power = std::sqrt(static_cast<double>(calc.model().dim())) - 1.0;
  std::vector<double> q(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    q[i] = std::pow(grid[i], power) * calc.N(grid[i]);
  }
  double worst = 0.0;
  nlohmann::json counterexamples = nlohmann::json::array();
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    const double scale = std::max(std::abs(q[i]), std::numeric_limits<double>::min());
    const double drop = (q[i] - q[i + 1]) / scale;
    worst = std::max(worst, drop);
    if (drop > tolerance::kMonotoneSlack && counterexamples.size() < 10) {
      counterexamples.push_back({{"t", grid[i]}, {"t_next", grid[i + 1]}, {"q", q[i]}, {"q_next", q[i + 1]}});
    }
  }
  IdentityEntry entry = judged("frequency.monotone", with_grid(calc.params(), grid), worst,
                               tolerance::kMonotoneSlack, std::string(to_string(calc.engine())));
  if (!counterexamples.empty()) {
    entry.details = {{"counterexamples", counterexamples}};
  }
  return entry;
}

IdentityEntry check_nlim_identity(const FrequencyCalculator& calc, std::span<const double> grid) {
  if (calc.alpha() != 0.0) {
    throw DomainError("the N_lim identity is stated for alpha = 0");
  }
  validate_grid(grid);
  require_nonzero(calc);
  const double beta_exp = calc.model().volume_exponent();
  double worst = 0.0;
  double worst_t = grid.front();
  for (double t : grid) {
    const double n = calc.N(t);
    const double rhs = -0.5 * beta_exp + 0.5 * t * calc.h_prime(t) / calc.h(t);
    const double residual = std::abs(n - rhs) / std::max(1.0, std::abs(n));
    if (!(residual <= worst)) {
      worst = residual;
      worst_t = t;
    }
  }
  IdentityEntry entry = judged("frequency.nlim_identity", with_grid(calc.params(), grid), worst,
                               tolerance::kDerivativeIdentity, std::string(to_string(calc.engine())));
  entry.details = {{"worst_t", worst_t}};
  return entry;
}

IdentityEntry check_mass_bounds(const FrequencyCalculator& calc, std::span<const double> grid) {
  validate_grid(grid);
  require_nonzero(calc);
  const double alpha = calc.alpha();
  std::vector<double> Hs(grid.size()), hs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Hs[i] = calc.H(grid[i]);
    hs[i] = alpha == 0.0 ? Hs[i] : calc.h(grid[i]);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double upper = std::pow(grid[i], alpha) * hs[i];
    worst = std::max(worst, (Hs[i] - upper) / upper);
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double lhs = hs[i] * std::pow(grid[j] - grid[i], alpha);
      worst = std::max(worst, (lhs - Hs[j]) / Hs[j]);
    }
  }
  return judged("frequency.mass_bounds", with_grid(calc.params(), grid), worst, tolerance::kInequalitySlack,
                std::string(to_string(calc.engine())));
}

IdentityEntry check_engine_agreement(const RigidShrinker& model, const HarmonicCombination& u, double alpha,
                                     std::span<const double> grid, const FrequencyOptions& options) {
  validate_grid(grid);
  const FrequencyCalculator closed(model, u, alpha, Engine::closed_form, options);
  const FrequencyCalculator quad(model, u, alpha, Engine::quadrature, options);
  double worst = 0.0;
  std::string worst_quantity = "H";
  for (double t : grid) {
    const std::pair<const char*, double> diffs[] = {
        {"H", relative_difference(closed.H(t), quad.H(t))},
        {"J", relative_difference(closed.J(t), quad.J(t))},
        {"h", relative_difference(closed.h(t), quad.h(t))},
    };
    for (const auto& [name, diff] : diffs) {
      if (!(diff <= worst)) {
        worst = diff;
        worst_quantity = name;
      }
    }
  }
  nlohmann::json params = with_grid(model_u_params(model, u, alpha), grid);
  params["tol_rel"] = options.quadrature.tol_rel;
  IdentityEntry entry = judged("frequency.engine_agreement", params, worst, tolerance::kEngineAgreement, "both");
  entry.details = {{"worst_quantity", worst_quantity}};
  return entry;
}

IdentityEntry check_pure_mode_law(const FrequencyCalculator& calc, std::span<const double> grid) {
  validate_grid(grid);
  const HarmonicCombination nonzero = calc.u().without_zero_terms();
  if (nonzero.terms().size() != 1 || !nonzero.is_polynomial()) {
    throw DomainError("pure-mode law needs a single nonzero polynomial mode");
  }
  const int d = std::get<PolynomialMode>(nonzero.terms().front().mode).degree;
  const double target = 0.5 * d * (calc.alpha() + 1.0);
  double worst = 0.0;
  for (double t : grid) {
    worst = std::max(worst, std::abs(calc.N(t) - target) / std::max(1.0, target));
  }
  const double tol =
      calc.engine() == Engine::closed_form ? tolerance::kPureModeClosed : tolerance::kPureModeQuadrature;
  IdentityEntry entry = judged("frequency.pure_mode_law", with_grid(calc.params(), grid), worst, tol,
                               std::string(to_string(calc.engine())));
  entry.details = {{"expected_N", target}};
  return entry;
}

IdentityEntry check_monte_carlo(const FrequencyCalculator& calc, double t, const MonteCarloOptions& mc) {
  const RigidShrinker& model = calc.model();
  const HarmonicCombination& u = calc.u();
  const QuadratureResult estimate = ball_monte_carlo(
      [&model, &u](std::span<const double> y) { return fiber_square(model, u, y); }, calc.alpha(),
      model.euclidean_rank(), t, mc);
  const double reference = calc.H(t);
  const double residual = estimate.error_estimate > 0.0
                              ? std::abs(estimate.value - reference) / estimate.error_estimate
                              : std::abs(estimate.value - reference);
  nlohmann::json params = model_u_params(model, u, calc.alpha());
  params["t"] = t;
  params["samples"] = mc.samples;
  IdentityEntry entry = judged("frequency.monte_carlo", params, residual, tolerance::kMonteCarloSigmas,
                               "monte_carlo/" + std::string(to_string(calc.engine())));
  entry.seed = mc.seed;
  entry.details = {{"estimate", estimate.value}, {"standard_error", estimate.error_estimate}, {"reference", reference}};
  return entry;
}

}  // namespace shrinker
