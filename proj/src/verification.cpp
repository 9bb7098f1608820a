#include "shrinker/verification.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "shrinker/error.hpp"
#include "shrinker/numerics.hpp"
#include "shrinker/special_functions.hpp"
#include "shrinker/theorem_suite.hpp"

namespace shrinker {
namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t mix_seed(std::uint64_t seed, const std::string& text) {
  // FNV-1a over the descriptor, folded into the user seed.
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash = (hash ^ c) * 1099511628211ULL;
  }
  return seed ^ hash;
}

IdentityEntry anchor_entry(std::string id, nlohmann::json values, double residual, double tol) {
  IdentityEntry entry = judged(std::move(id), {{"model", "gaussian:k=3"}, {"t", 1.0}}, residual, tol, "closed_form");
  entry.details = std::move(values);
  return entry;
}

void verify_model(const std::string& descriptor, const VerifyConfig& config, IdentityReport& report) {
  const RigidShrinker model = parse_model(descriptor);
  const int k = model.euclidean_rank();
  const FrequencyOptions& options = config.frequency;
  CombinationSampler sampler(mix_seed(config.seed, descriptor));

  const std::vector<double> grid10 = log_grid(1e-2, 1e2, 10);
  const std::vector<double> scan_grid = log_grid_per_decade(config.t_min, config.t_max, config.points_per_decade);

  // Geometry.
  report.add(coarea_check(model, log_grid(0.1, 20.0, 25)));
  {
    std::vector<double> volumes;
    double area_residual = 0.0;
    for (double t : grid10) {
      volumes.push_back(sublevel_volume(model, t));
      const double derivative = log_stencil_derivative([&model](double s) { return sublevel_volume(model, s); }, t);
      area_residual = std::max(area_residual, relative_difference(std::sqrt(t) * derivative, boundary_area(model, t)));
    }
    const double slope = loglog_slope(grid10, volumes);
    IdentityEntry law = judged("geometry.volume_slope", {{"model", model.to_json()}, {"grid", grid_json(grid10)}},
                               std::abs(slope - model.volume_exponent()), 1e-9, "closed_form");
    law.details = {{"slope", slope}};
    report.add(std::move(law));
    report.add(judged("geometry.boundary_area", {{"model", model.to_json()}, {"grid", grid_json(grid10)}},
                      area_residual, 1e-6, "closed_form"));
  }

  std::vector<HarmonicCombination> combos;
  for (std::size_t i = 0; i < config.combinations; ++i) {
    combos.push_back(sampler.polynomial(k, 6));
  }
  // A constant plus a perturbation, for the t → 0 limit.
  combos.push_back(HarmonicCombination::constant(k, 1.0).plus(HarmonicCombination::coordinate_y1(k)));

  for (const HarmonicCombination& u : combos) {
    report.add(check_harmonicity(model, u, 100, mix_seed(config.seed, u.to_descriptor())));
  }

  // Frequency engines and identities.
  for (const HarmonicCombination& u : combos) {
    for (double alpha : {0.0, 2.0, 2.5, 3.0}) {
      report.add(check_engine_agreement(model, u, alpha, grid10, options));
    }
  }
  for (int d = 0; d <= 6; ++d) {
    const int size = angular_basis_size(k, d);
    if (size == 0) {
      continue;
    }
    const HarmonicCombination mode = HarmonicCombination::single(PolynomialMode{d, size - 1}, 0.5 + d);
    const double alpha = std::array<double, 4>{0.0, 2.0, 2.5, 3.0}[static_cast<std::size_t>(d % 4)];
    const std::vector<double> grid = log_grid(0.05, 20.0, 5);
    for (Engine engine : {Engine::closed_form, Engine::quadrature}) {
      report.add(check_pure_mode_law(FrequencyCalculator(model, mode, alpha, engine, options), grid));
    }
    report.append(doubling_check(model, mode, DoublingParameters{2.0, 4.0, 0.1, 1.0, 20}));
  }
  for (const HarmonicCombination& u : combos) {
    for (Engine engine : {Engine::closed_form, Engine::quadrature}) {
      report.add(check_H_ode(FrequencyCalculator(model, u, 2.0, engine, options), grid10));
      report.add(check_log_derivative(FrequencyCalculator(model, u, 2.5, engine, options), grid10));
      report.add(check_nlim_identity(FrequencyCalculator(model, u, 0.0, engine, options), grid10));
    }
    const FrequencyCalculator closed2(model, u, 2.0, Engine::closed_form, options);
    report.add(check_mass_bounds(closed2, log_grid(0.05, 20.0, 12)));
    report.add(check_P1(closed2, 1.0, 4.0));
    for (double alpha : {2.0, 3.0}) {
      report.add(check_monotone_frequency(FrequencyCalculator(model, u, alpha, Engine::closed_form, options),
                                          scan_grid));
    }
  }

  if (k <= 3) {
    const std::uint64_t mc_seed = mix_seed(config.seed, descriptor + "/mc");
    const MonteCarloOptions mc{config.mc_samples, mc_seed};
    for (const HarmonicCombination& u :
         {HarmonicCombination::constant(k, 1.0), HarmonicCombination::coordinate_y1(k), combos.front()}) {
      report.add(check_monte_carlo(FrequencyCalculator(model, u, 2.0, Engine::closed_form, options), 1.0, mc));
    }
  }

  // Liouville machinery.
  {
    const double delta = 1.0;
    const std::vector<double> band_grid = log_grid(1e-2, 10.0, 10);
    const HarmonicCombination flat = HarmonicCombination::constant(k, 2.0 * delta);
    report.add(band_sandwich_check(model, flat, delta, band_grid, options));
    report.add(band_sandwich_check(model, flat.plus(HarmonicCombination::coordinate_y1(k).scaled(0.05)), delta,
                                   band_grid, options));
    report.add(band_sandwich_check(model, HarmonicCombination::coordinate_y1(k), delta, band_grid, options));
  }
  for (const HarmonicCombination& u : combos) {
    report.append(n_limit_scan(model, u, 6.0, options));
    report.append(case1_chain_check(model, u, log_grid(1e-2, 1e2, 20), options.quadrature));
  }
  for (std::size_t i = 0; i < config.combinations; ++i) {
    report.append(case2_identity_check(model, sampler.polynomial(k, 4), grid10, options.quadrature));
  }
  report.append(case2_identity_check(model, HarmonicCombination::constant(k, 1.0), grid10, options.quadrature));

  // Doubling and dimension.
  for (const HarmonicCombination& u : combos) {
    for (double lambda : {1.0, 2.0, 5.0}) {
      for (double T : {4.0, 16.0}) {
        report.append(doubling_check(model, u, DoublingParameters{2.0, T, 0.1, lambda, 20}));
      }
    }
    report.add(ball_doubling_check(model, u, log_grid(0.1, 10.0, 8)));
  }
  report.add(dimension_check(model, 6));

  // Exponential modes on k = 1 cylinders.
  const auto spectrum = model.factor().eigenvalues();
  if (k == 1 && spectrum.size() > 1 && model.factor().hook()) {
    const HarmonicCombination even = HarmonicCombination::single(ExponentialMode{1, Parity::even});
    const HarmonicCombination odd = HarmonicCombination::single(ExponentialMode{1, Parity::odd}, 0.5);
    const HarmonicCombination mixed = even.plus(odd).plus(HarmonicCombination::constant(k, 1.0));
    for (const HarmonicCombination& u : {even, odd, mixed}) {
      const FrequencyCalculator quad2(model, u, 2.0, Engine::quadrature, options);
      report.add(check_H_ode(quad2, grid10));
      report.add(check_log_derivative(quad2, grid10));
      report.add(check_mass_bounds(quad2, log_grid(0.05, 20.0, 12)));
      for (double alpha : {2.0, 3.0}) {
        report.add(check_monotone_frequency(FrequencyCalculator(model, u, alpha, Engine::quadrature, options),
                                            scan_grid));
      }
      report.add(check_nlim_identity(FrequencyCalculator(model, u, 0.0, Engine::quadrature, options), grid10));
      report.append(n_limit_scan(model, u, 6.0, options));
      report.append(case1_chain_check(model, u, log_grid(1e-2, 1e2, 20), options.quadrature));
      report.append(case2_identity_check(model, u, grid10, options.quadrature));
      const MonteCarloOptions mc{config.mc_samples, mix_seed(config.seed, u.to_descriptor() + "/mc")};
      report.add(check_monte_carlo(quad2, 1.0, mc));
    }
  }
}

}  // namespace

double CombinationSampler::uniform() { return static_cast<double>(generator_() >> 11) * 0x1.0p-53; }

int CombinationSampler::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(generator_() % span);
}

HarmonicCombination CombinationSampler::polynomial(int k, int max_degree, int max_terms) {
  std::vector<PolynomialMode> available;
  for (int d = 0; d <= max_degree; ++d) {
    for (int idx = 0; idx < angular_basis_size(k, d); ++idx) {
      available.push_back(PolynomialMode{d, idx});
    }
  }
  if (available.empty()) {
    throw DomainError("CombinationSampler: no polynomial modes available");
  }
  const int count = integer(1, std::min<int>(max_terms, static_cast<int>(available.size())));
  std::vector<Term> terms;
  for (int i = 0; i < count; ++i) {
    const auto pick = static_cast<std::size_t>(integer(0, static_cast<int>(available.size()) - 1));
    const double magnitude = 0.1 + 1.9 * uniform();
    const double sign = uniform() < 0.5 ? -1.0 : 1.0;
    terms.push_back(Term{sign * magnitude, available[pick]});
    available.erase(available.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return HarmonicCombination(std::move(terms));
}

std::vector<std::string> default_verify_models() {
  return {"gaussian:k=1", "gaussian:k=2", "gaussian:k=3", "gaussian:k=4", "cylinder:m=2,k=1", "cylinder:m=3,k=2"};
}

IdentityReport anchor_checks(const FrequencyOptions& options) {
  IdentityReport report;
  const RigidShrinker g3 = RigidShrinker::gaussian(3);
  const RigidShrinker c21 = RigidShrinker::cylinder(2, 1);
  const HarmonicCombination one = HarmonicCombination::constant(3, 1.0);
  const HarmonicCombination y1 = HarmonicCombination::coordinate_y1(3);

  const double vol_g = sublevel_volume(g3, 1.0);
  const double vol_c = sublevel_volume(c21, 1.0);
  report.add(anchor_entry("geometry.anchor",
                          {{"gaussian_volume", vol_g}, {"cylinder_volume", vol_c},
                           {"gaussian_area", boundary_area(g3, 1.0)}, {"cylinder_area", boundary_area(c21, 1.0)}},
                          std::max({relative_difference(vol_g, 32.0 * kPi / 3.0), relative_difference(vol_c, 32.0 * kPi),
                                    relative_difference(boundary_area(g3, 1.0), 16.0 * kPi),
                                    relative_difference(boundary_area(c21, 1.0), 16.0 * kPi)}),
                          1e-10));

  for (Engine engine : {Engine::closed_form, Engine::quadrature}) {
    const FrequencyCalculator constant(g3, one, 2.0, engine, options);
    const FrequencyCalculator linear(g3, y1, 2.0, engine, options);
    const double H1 = constant.H(1.0);
    const double Hy = linear.H(1.0);
    const double Jy = linear.J(1.0);
    const double Ny = linear.N(1.0);
    IdentityEntry entry = anchor_entry(
        "frequency.anchor", {{"H_constant", H1}, {"H_y1", Hy}, {"J_y1", Jy}, {"N_y1", Ny}},
        std::max({relative_difference(H1, 256.0 * kPi / 105.0), relative_difference(Hy, 1024.0 * kPi / 945.0),
                  relative_difference(Jy, 512.0 * kPi / 315.0), std::abs(Ny - 1.5)}),
        engine == Engine::closed_form ? 1e-12 : 1e-10);
    entry.params["engine"] = std::string(to_string(engine));
    entry.engine = std::string(to_string(engine));
    report.add(std::move(entry));
  }

  const CaseOneValues one_values = case1_values(g3, y1, 1.0, options.quadrature);
  report.add(anchor_entry("liouville.case1.anchor",
                          {{"K", one_values.K}, {"bound", one_values.bound},
                           {"boundary_square", one_values.boundary.square},
                           {"boundary_gradient_square", one_values.boundary.gradient_square}},
                          std::max({relative_difference(one_values.K, 32.0 * kPi / 3.0),
                                    relative_difference(one_values.bound, 32.0 * kPi / std::sqrt(3.0)),
                                    one_values.K > one_values.bound ? 1.0 : 0.0}),
                          1e-8));

  const CaseTwoValues two = case2_values(g3, y1, 1.0, options.quadrature);
  report.add(anchor_entry("liouville.case2.anchor",
                          {{"lhs", two.lhs}, {"flux_term", two.flux_term}, {"boundary_term", two.boundary_term},
                           {"corrected_rhs", two.corrected_rhs}},
                          std::max({relative_difference(two.lhs, 16.0 * kPi),
                                    relative_difference(two.corrected_rhs, 16.0 * kPi),
                                    relative_difference(two.flux_term, 32.0 * kPi / 3.0)}),
                          1e-10));
  IdentityEntry printed = skipped("liouville.case2.printed_anchor", {{"model", "gaussian:k=3"}, {"t", 1.0}},
                                  "informational: boundary coefficient n/2-R+1 as printed", "closed_form");
  printed.residual = relative_difference(two.printed_rhs, two.lhs);
  printed.tol = 1e-10;
  printed.details = {{"printed_rhs", two.printed_rhs}, {"lhs", two.lhs}, {"factor", two.printed_rhs / two.lhs}};
  report.add(std::move(printed));
  return report;
}

IdentityReport run_verification(const VerifyConfig& config) {
  const std::vector<std::string> models = config.models.empty() ? default_verify_models() : config.models;
  IdentityReport report;
  for (const std::string& descriptor : models) {
    verify_model(descriptor, config, report);
  }
  report.append(anchor_checks(config.frequency));
  IdentityReport stamped;
  for (IdentityEntry entry : report.entries()) {
    if (entry.seed == 0) {
      entry.seed = config.seed;
    }
    stamped.add(std::move(entry));
  }
  return stamped;
}

nlohmann::json verify_run_info(const VerifyConfig& config) {
  const std::vector<std::string> models = config.models.empty() ? default_verify_models() : config.models;
  return {{"command", "verify"},
          {"models", models},
          {"seed", config.seed},
          {"tol_rel", config.frequency.quadrature.tol_rel},
          {"tol_abs", config.frequency.quadrature.tol_abs},
          {"mc_samples", config.mc_samples},
          {"combinations", config.combinations},
          {"grid", {{"t_min", config.t_min}, {"t_max", config.t_max}, {"ppd", config.points_per_decade}}}};
}

}  // namespace shrinker
