#include "shrinker/theorem_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shrinker/error.hpp"
#include "shrinker/numerics.hpp"
#include "shrinker/special_functions.hpp"

namespace shrinker {
namespace {

constexpr double kIdentityTol = 1e-6;

double eigen_root(const RigidShrinker& model, const ExponentialMode& mode) {
  return std::sqrt(model.factor().eigenvalues()[static_cast<std::size_t>(mode.eigen_index)]);
}

double radial_value(double power, double t, std::function<double(double)> profile, const QuadratureOptions& options) {
  QuadratureOptions scaled = options;
  scaled.tol_abs = options.tol_abs * std::pow(rho_from_t(t), power + 1.0);
  return integrate_radial(RadialIntegrand{power, 0.0, std::move(profile), t}, scaled).value;
}

nlohmann::json base_params(const RigidShrinker& model, const HarmonicCombination& u) {
  return {{"model", model.to_json()}, {"u", u.to_descriptor()}};
}

double max_pure_frequency_cap(double alpha) { return 0.5 * 6 * (alpha + 1.0); }

}  // namespace

Engine preferred_engine(const HarmonicCombination& u) {
  return u.is_polynomial() ? Engine::closed_form : Engine::quadrature;
}

BoundaryIntegrals boundary_integrals(const RigidShrinker& model, const HarmonicCombination& u, double t) {
  if (!(t > 0.0)) {
    throw DomainError("boundary_integrals: t must be positive");
  }
  validate_for(model, u);
  const int k = model.euclidean_rank();
  const double rho = rho_from_t(t);
  const double volume = model.factor_volume();
  BoundaryIntegrals out;
  for (const Term& term : u.terms()) {
    const double c2 = term.coefficient * term.coefficient;
    if (c2 == 0.0) {
      continue;
    }
    if (const auto* mode = std::get_if<PolynomialMode>(&term.mode)) {
      const int d = mode->degree;
      out.square += volume * c2 * std::pow(rho, 2 * d + k - 1);
      if (d > 0) {
        out.flux += volume * c2 * d * std::pow(rho, 2 * d + k - 2);
        out.gradient_square += volume * c2 * d * (2 * d + k - 2) * std::pow(rho, 2 * d + k - 3);
      }
    } else {
      const auto& e = std::get<ExponentialMode>(term.mode);
      const double a = eigen_root(model, e);
      const bool even = e.parity == Parity::even;
      const double g = even ? std::cosh(a * rho) : std::sinh(a * rho);
      const double dg = a * (even ? std::sinh(a * rho) : std::cosh(a * rho));
      // Two boundary copies y = ±ρ of N; g g' is odd so both carry the same flux.
      out.square += 2.0 * c2 * g * g;
      out.flux += 2.0 * c2 * g * dg;
      out.gradient_square += 2.0 * c2 * a * a * std::cosh(2.0 * a * rho);
    }
  }
  return out;
}

double dirichlet_energy(const RigidShrinker& model, const HarmonicCombination& u, double t,
                        const QuadratureOptions& options) {
  validate_for(model, u);
  const int k = model.euclidean_rank();
  double total = 0.0;
  for (const Term& term : u.terms()) {
    const double c2 = term.coefficient * term.coefficient;
    if (c2 == 0.0) {
      continue;
    }
    if (const auto* mode = std::get_if<PolynomialMode>(&term.mode)) {
      const int d = mode->degree;
      if (d > 0) {
        total += model.factor_volume() * c2 * d * (2 * d + k - 2) * radial_value(2.0 * d + k - 3, t, {}, options);
      }
    } else {
      const double a = eigen_root(model, std::get<ExponentialMode>(term.mode));
      total += 2.0 * c2 * radial_value(0.0, t, [a](double r) { return a * a * std::cosh(2.0 * a * r); }, options);
    }
  }
  return total;
}

IdentityEntry band_sandwich_check(const RigidShrinker& model, const HarmonicCombination& u, double delta,
                                  std::span<const double> grid, const FrequencyOptions& options) {
  if (!(delta > 0.0)) {
    throw DomainError("band_sandwich_check: delta must be positive");
  }
  validate_grid(grid);
  nlohmann::json params = base_params(model, u);
  params["delta"] = delta;
  params["grid"] = grid_json(grid);
  const Engine engine = preferred_engine(u);
  for (double t : grid) {
    const double lower = inf_on_sublevel(u, model, t);
    const double upper = sup_on_sublevel(u, model, t);
    if (!(lower > delta) || !(upper < 3.0 * delta)) {
      IdentityEntry entry = skipped("liouville.band_sandwich", params,
                                    "band hypothesis delta < u < 3 delta fails on D_t", std::string(to_string(engine)));
      entry.details = {{"violating_t", t}, {"inf_bound", lower}, {"sup_bound", upper}};
      return entry;
    }
  }
  const FrequencyCalculator calc(model, u, 0.0, engine, options);
  double worst = 0.0;
  for (double t : grid) {
    const double mass = calc.h(t);
    const double unit = delta * delta * sublevel_volume(model, t);
    worst = std::max({worst, (unit - mass) / unit, (mass - 9.0 * unit) / unit});
  }
  return judged("liouville.band_sandwich", params, worst, tolerance::kInequalitySlack,
                std::string(to_string(engine)));
}

CaseOneValues case1_values(const RigidShrinker& model, const HarmonicCombination& u, double t,
                           const QuadratureOptions& options) {
  CaseOneValues out;
  out.K = dirichlet_energy(model, u, t, options);
  out.boundary = boundary_integrals(model, u, t);
  out.bound = std::pow(t, 0.25) * std::sqrt(out.boundary.square) *
              std::sqrt(out.boundary.gradient_square / std::sqrt(t));
  return out;
}

IdentityReport case1_chain_check(const RigidShrinker& model, const HarmonicCombination& u,
                                 std::span<const double> grid, const QuadratureOptions& options) {
  validate_grid(grid);
  nlohmann::json params = base_params(model, u);
  params["grid"] = grid_json(grid);
  double divergence = 0.0;
  double cauchy_schwarz = 0.0;
  for (double t : grid) {
    const CaseOneValues v = case1_values(model, u, t, options);
    divergence = std::max(divergence, relative_difference(v.K, v.boundary.flux));
    if (v.K > v.bound) {
      cauchy_schwarz = std::max(cauchy_schwarz, (v.K - v.bound) / v.K);
    }
  }
  IdentityReport report;
  IdentityEntry div = judged("liouville.case1.divergence", params, divergence, kIdentityTol, "quadrature");
  IdentityEntry cs =
      judged("liouville.case1.cauchy_schwarz", params, cauchy_schwarz, tolerance::kInequalitySlack, "quadrature");
  if (u.without_zero_terms().max_degree() <= 0 && u.is_polynomial()) {
    div.details = {{"note", "constant u: K = 0 and both sides vanish"}};
    cs.details = div.details;
  }
  report.add(std::move(div));
  report.add(std::move(cs));
  return report;
}

CaseTwoValues case2_values(const RigidShrinker& model, const HarmonicCombination& u, double t,
                           const QuadratureOptions& options) {
  validate_for(model, u);
  const int k = model.euclidean_rank();
  const double beta_exp = model.volume_exponent();
  CaseTwoValues out;
  for (const Term& term : u.terms()) {
    const double c2 = term.coefficient * term.coefficient;
    if (c2 == 0.0) {
      continue;
    }
    if (const auto* mode = std::get_if<PolynomialMode>(&term.mode)) {
      const int d = mode->degree;
      if (d > 0) {
        // r^{2d+k-3} (r²/4)^{1-β} = 4^{β-1} r^{2d-1}
        out.lhs += model.factor_volume() * c2 * d * (2 * d + k - 2) * std::pow(4.0, beta_exp - 1.0) *
                   radial_value(2.0 * d - 1, t, {}, options);
      }
    } else {
      // k = 1, f^{1/2} = |y|/2
      const double a = eigen_root(model, std::get<ExponentialMode>(term.mode));
      out.lhs += c2 * radial_value(1.0, t, [a](double r) { return a * a * std::cosh(2.0 * a * r); }, options);
    }
  }
  const BoundaryIntegrals b = boundary_integrals(model, u, t);
  out.flux_term = std::pow(t, 1.0 - beta_exp) * b.flux;
  out.boundary_term = std::pow(t, 0.5 - beta_exp) * b.square;
  out.origin_term = std::pow(2.0, k - 1) * unit_sphere_area(k) * fiber_square_at_origin(model, u);
  out.corrected_rhs = out.flux_term + 0.5 * (beta_exp - 1.0) * (out.boundary_term - out.origin_term);
  out.without_origin_rhs = out.flux_term + 0.5 * (beta_exp - 1.0) * out.boundary_term;
  out.printed_rhs = out.flux_term + (beta_exp + 1.0) * out.boundary_term;
  return out;
}

IdentityReport case2_identity_check(const RigidShrinker& model, const HarmonicCombination& u,
                                    std::span<const double> grid, const QuadratureOptions& options) {
  validate_grid(grid);
  const double beta_exp = model.volume_exponent();
  nlohmann::json params = base_params(model, u);
  params["grid"] = grid_json(grid);
  double corrected = 0.0;
  double without_origin = 0.0;
  double printed = 0.0;
  double printed_ratio = 1.0;
  for (double t : grid) {
    const CaseTwoValues v = case2_values(model, u, t, options);
    const double half = 0.5 * std::abs(beta_exp - 1.0);
    const double scale = std::max({std::abs(v.lhs), std::abs(v.flux_term), half * std::abs(v.boundary_term),
                                   half * std::abs(v.origin_term), std::numeric_limits<double>::min()});
    corrected = std::max(corrected, std::abs(v.lhs - v.corrected_rhs) / scale);
    without_origin = std::max(without_origin, std::abs(v.lhs - v.without_origin_rhs) / scale);
    const double printed_dev = std::abs(v.lhs - v.printed_rhs) / scale;
    if (printed_dev > printed) {
      printed = printed_dev;
      printed_ratio = v.lhs != 0.0 ? v.printed_rhs / v.lhs : std::numeric_limits<double>::infinity();
    }
  }
  const std::string regime = beta_exp >= 1.5 ? "case_II" : "beta_below_3/2";
  IdentityReport report;
  IdentityEntry entry = judged("liouville.case2.corrected", params, corrected, kIdentityTol, "quadrature");
  entry.details = {{"regime", regime}};
  report.add(std::move(entry));

  IdentityEntry plain = skipped("liouville.case2.without_origin", params,
                                "informational: identity without the core flux term", "quadrature");
  plain.residual = without_origin;
  plain.tol = kIdentityTol;
  report.add(std::move(plain));

  IdentityEntry as_printed = skipped("liouville.case2.printed", params,
                                     "informational: boundary coefficient n/2-R+1 as printed", "quadrature");
  as_printed.residual = printed;
  as_printed.tol = kIdentityTol;
  as_printed.details = {{"rhs_over_lhs", printed_ratio}};
  report.add(std::move(as_printed));
  return report;
}

IdentityReport n_limit_scan(const RigidShrinker& model, const HarmonicCombination& u, double decades,
                            const FrequencyOptions& options) {
  if (!(decades > 0.0)) {
    throw DomainError("n_limit_scan: decades must be positive");
  }
  const HarmonicCombination v = u.without_zero_terms();
  if (v.terms().empty()) {
    throw DomainError("n_limit_scan: zero function");
  }
  const Engine engine = preferred_engine(v);
  const FrequencyCalculator calc(model, v, 0.0, engine, options);
  nlohmann::json params = base_params(model, v);
  const std::string engine_name(to_string(engine));
  IdentityReport report;

  if (!v.is_polynomial()) {
    const double n1 = calc.N(1.0);
    const double n16 = calc.N(16.0);
    const double cap = max_pure_frequency_cap(0.0);
    params["t"] = {1.0, 16.0};
    IdentityEntry entry = judged("liouville.n_limit.exponential", params, std::max(n1 - n16, cap - n16), 0.0,
                                 engine_name);
    entry.details = {{"N_1", n1}, {"N_16", n16}, {"pure_mode_cap", cap}};
    report.add(std::move(entry));
    return report;
  }

  const double t_lo = std::pow(10.0, -decades);
  const double t_hi = std::pow(10.0, decades);
  params["t_range"] = {t_lo, t_hi};
  nlohmann::json trace = nlohmann::json::array();
  for (double t : log_grid(t_lo, t_hi, static_cast<std::size_t>(2 * decades + 1))) {
    trace.push_back({t, calc.N(t)});
  }

  const double n_lo = calc.N(t_lo);
  const bool has_constant = v.constant_coefficient() != 0.0;
  const double zero_target = has_constant ? 0.0 : 0.5 * v.min_degree();
  IdentityEntry zero_end =
      judged("liouville.n_limit.zero", params, std::abs(n_lo - zero_target), tolerance::kLimit, engine_name);
  zero_end.details = {{"N", n_lo}, {"limit", zero_target}, {"trace", trace}};
  if (!has_constant) {
    zero_end.details["note"] = "no constant term: the t -> 0 limit is the lowest-degree frequency";
  }
  report.add(std::move(zero_end));

  const double n_hi = calc.N(t_hi);
  const double infinity_target = 0.5 * v.max_degree();
  IdentityEntry far_end = judged("liouville.n_limit.infinity", params, std::abs(n_hi - infinity_target),
                                 tolerance::kLimit, engine_name);
  far_end.details = {{"N", n_hi}, {"limit", infinity_target}};
  report.add(std::move(far_end));
  return report;
}

double doubling_exponent_bound(double alpha, int n, double beta_exp, double growth, double epsilon, double lambda,
                               double T) {
  const double p = std::sqrt(static_cast<double>(n)) - 1.0;
  return alpha + beta_exp +
         2.0 * std::pow(lambda, p) * std::pow(T, p) * (growth + epsilon + 0.5 * (beta_exp + alpha));
}

double minimal_lambda(double alpha, int n, double beta_exp, double growth, double epsilon, double T,
                      double target) {
  if (doubling_exponent_bound(alpha, n, beta_exp, growth, epsilon, 1.0, T) >= target) {
    return 1.0;
  }
  const double p = std::sqrt(static_cast<double>(n)) - 1.0;
  if (p <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double needed = (target - alpha - beta_exp) / (2.0 * std::pow(T, p) * (growth + epsilon + 0.5 * (beta_exp + alpha)));
  return std::max(1.0, std::pow(needed, 1.0 / p));
}

DoublingResult doubling_records(const RigidShrinker& model, const HarmonicCombination& u,
                                const DoublingParameters& params) {
  if (!(params.T > 2.0)) {
    throw DomainError("doubling: window (1, T) needs T > 2");
  }
  if (!(params.lambda >= 1.0) || !(params.epsilon > 0.0)) {
    throw DomainError("doubling: need lambda >= 1 and epsilon > 0");
  }
  if (params.samples == 0) {
    throw DomainError("doubling: no sample points requested");
  }
  const HarmonicCombination v = u.without_zero_terms();
  if (v.terms().empty()) {
    throw DomainError("doubling: zero function");
  }
  if (!v.is_polynomial()) {
    throw DomainError("doubling: exponential modes have infinite growth order");
  }
  const FrequencyCalculator calc(model, v, params.alpha, Engine::closed_form);
  const double beta_exp = model.volume_exponent();

  DoublingResult out;
  out.growth_order = growth_order(v);
  for (double t : log_grid(1.0, params.T, 200)) {
    out.sup_N = std::max(out.sup_N, calc.N(t));
  }
  out.L_tight = params.alpha + beta_exp + 2.0 * out.sup_N / (params.alpha + 1.0);
  out.L_paper = doubling_exponent_bound(params.alpha, model.dim(), beta_exp, out.growth_order, params.epsilon,
                                        params.lambda, params.T);

  // t strictly inside (1, T/2) so that t and 2t lie in (1, T).
  const double lo = std::log(1.0);
  const double hi = std::log(0.5 * params.T);
  double max_emp = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < params.samples; ++i) {
    const double t = std::exp(lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(params.samples));
    DoublingRecord r;
    r.t = t;
    r.ratio = calc.H(2.0 * t) / calc.H(t);
    r.L_emp = std::log2(r.ratio);
    r.L_tight = out.L_tight;
    r.L_paper = out.L_paper;
    const double slack = tolerance::kInequalitySlack * std::max(1.0, r.L_tight);
    r.verdict = (r.L_emp <= r.L_tight + slack && r.L_tight <= r.L_paper + slack) ? Verdict::pass : Verdict::fail;
    max_emp = std::max(max_emp, r.L_emp);
    out.records.push_back(r);
  }
  out.minimal_lambda = minimal_lambda(params.alpha, model.dim(), beta_exp, out.growth_order, params.epsilon,
                                      params.T, max_emp);
  return out;
}

IdentityReport doubling_check(const RigidShrinker& model, const HarmonicCombination& u,
                              const DoublingParameters& params) {
  const DoublingResult result = doubling_records(model, u, params);
  nlohmann::json p = base_params(model, u.without_zero_terms());
  p["alpha"] = params.alpha;
  p["T"] = params.T;
  p["epsilon"] = params.epsilon;
  p["lambda"] = params.lambda;

  double worst = 0.0;
  for (const DoublingRecord& r : result.records) {
    const double scale = std::max(1.0, r.L_tight);
    worst = std::max({worst, (r.L_emp - r.L_tight) / scale, (r.L_tight - r.L_paper) / scale});
  }
  IdentityReport report;
  IdentityEntry ordering = judged("doubling.ordering", p, worst, tolerance::kInequalitySlack, "closed_form");
  ordering.details = {{"L_tight", result.L_tight},
                      {"L_paper", result.L_paper},
                      {"sup_N", result.sup_N},
                      {"growth_order", result.growth_order},
                      {"minimal_lambda", result.minimal_lambda}};
  report.add(std::move(ordering));

  const HarmonicCombination v = u.without_zero_terms();
  if (v.terms().size() == 1) {
    const int degree = v.max_degree();
    const double expected = degree + model.volume_exponent() + params.alpha;
    double pure = 0.0;
    for (const DoublingRecord& r : result.records) {
      pure = std::max(pure, std::abs(r.L_emp - expected));
    }
    IdentityEntry entry = judged("doubling.pure_mode", p, pure, 1e-10, "closed_form");
    entry.details = {{"expected_L", expected}};
    report.add(std::move(entry));
  }
  return report;
}

IdentityEntry ball_doubling_check(const RigidShrinker& model, const HarmonicCombination& u,
                                  std::span<const double> grid) {
  validate_grid(grid);
  const HarmonicCombination v = u.without_zero_terms();
  if (v.terms().empty() || !v.is_polynomial()) {
    throw DomainError("ball doubling needs a nonzero polynomial combination");
  }
  const FrequencyCalculator calc(model, v, 0.0, Engine::closed_form);
  const double beta_exp = model.volume_exponent();
  const double low = std::pow(5.0, beta_exp + v.min_degree());
  const double high = std::pow(5.0, beta_exp + v.max_degree());
  double worst = 0.0;
  double constant_max = 0.0;
  for (double t : grid) {
    double sup_n = 0.0;
    for (double s : log_grid(t, 5.0 * t, 50)) {
      sup_n = std::max(sup_n, calc.N(s));
    }
    const double bound = std::pow(5.0, beta_exp + 2.0 * sup_n);
    constant_max = std::max(constant_max, bound);
    const double ratio = calc.h(5.0 * t) / calc.h(t);
    worst = std::max({worst, (ratio - bound) / bound, (low - ratio) / low, (ratio - high) / high});
  }
  nlohmann::json params = base_params(model, v);
  params["grid"] = grid_json(grid);
  IdentityEntry entry = judged("doubling.ball", params, worst, tolerance::kInequalitySlack, "closed_form");
  entry.details = {{"C_L_max", constant_max}, {"pure_ratio_low", low}, {"pure_ratio_high", high}};
  return entry;
}

std::vector<std::pair<int, unsigned long long>> dimension_table(const RigidShrinker& model, int d_max) {
  if (d_max < 0) {
    throw DomainError("dimension_table: d_max must be nonnegative");
  }
  std::vector<std::pair<int, unsigned long long>> rows;
  for (int d = 0; d <= d_max; ++d) {
    rows.emplace_back(d, dim_poly_space(model, d));
  }
  return rows;
}

IdentityEntry dimension_check(const RigidShrinker& model, int d_max) {
  const int k = model.euclidean_rank();
  const auto rows = dimension_table(model, d_max);
  double mismatches = 0.0;
  nlohmann::json table = nlohmann::json::array();
  unsigned long long previous = 0;
  for (const auto& [d, dim] : rows) {
    unsigned long long expected = 0;
    switch (k) {
      case 1:
        expected = d == 0 ? 1 : 2;
        break;
      case 2:
        expected = 2ULL * static_cast<unsigned long long>(d) + 1;
        break;
      case 3:
        expected = static_cast<unsigned long long>(d + 1) * static_cast<unsigned long long>(d + 1);
        break;
      default:
        expected = binomial(d + k, k) - binomial(d + k - 2, k);
    }
    if (dim != expected || dim < previous) {
      mismatches += 1.0;
    }
    previous = dim;
    table.push_back({d, dim});
  }
  nlohmann::json params = {{"model", model.to_json()}, {"d_max", d_max}};
  IdentityEntry entry = judged("dimension.table", params, mismatches, 0.0, "exact");
  entry.details = {{"table", table},
                   {"label", model.family() == "gaussian" ? "dim H_d" : "constructed-family dimension"}};
  return entry;
}

}  // namespace shrinker
