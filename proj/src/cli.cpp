#include "shrinker/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "shrinker/error.hpp"
#include "shrinker/frequency.hpp"
#include "shrinker/numerics.hpp"
#include "shrinker/theorem_suite.hpp"
#include "shrinker/verification.hpp"

namespace shrinker {
namespace {

std::string num(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::vector<double> make_grid(const RunConfig& config) {
  if (!(config.t_min > 0.0) || !(config.t_max > config.t_min)) {
    throw DomainError("grid needs 0 < t-min < t-max");
  }
  if (config.spacing == "log") {
    return log_grid_per_decade(config.t_min, config.t_max, config.ppd);
  }
  if (config.spacing == "linear") {
    return linear_grid(config.t_min, config.t_max, config.points);
  }
  throw DomainError("grid spacing must be 'log' or 'linear'");
}

FrequencyOptions frequency_options(const RunConfig& config) {
  if (!(config.tol_rel > 0.0) || !(config.tol_abs > 0.0)) {
    throw DomainError("tolerances must be positive");
  }
  FrequencyOptions options;
  options.quadrature.tol_rel = config.tol_rel;
  options.quadrature.tol_abs = config.tol_abs;
  return options;
}

nlohmann::json run_info(const std::string& command, const RunConfig& config) {
  return {{"command", command},
          {"model", config.model},
          {"modes", config.modes},
          {"alpha", config.alpha},
          {"grid", {{"t_min", config.t_min}, {"t_max", config.t_max}, {"ppd", config.ppd}, {"spacing", config.spacing}}},
          {"engine", config.engine},
          {"tol_rel", config.tol_rel},
          {"tol_abs", config.tol_abs},
          {"seed", config.seed}};
}

// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw DomainError("cannot open '" + path + "' for writing");
  }
  file << text;
}

int finish(const IdentityReport& report, const nlohmann::json& info, const RunConfig& config, std::ostream& out,
           std::ostream& err, bool report_is_primary) {
  const std::string json = report.to_json(info).dump(2) + "\n";
  if (report_is_primary) {
    emit(config.out, json, out);
    (config.out.empty() ? err : out) << report.summary_table();
  } else {
    if (!config.json_out.empty()) {
      emit(config.json_out, json, out);
    }
    (config.out.empty() ? err : out) << report.summary_table();
  }
  return report.all_passed() ? exit_code::kOk : exit_code::kFailedChecks;
}

std::string format_R(double R) {
  const double twice = 2.0 * R;
  if (std::abs(twice - std::round(twice)) < 1e-12 && static_cast<long>(std::round(twice)) % 2 != 0) {
    return std::to_string(static_cast<long>(std::round(twice))) + "/2";
  }
  return std::to_string(static_cast<long>(std::round(R)));
}

int run_models(const RunConfig& config, std::ostream& out) {
  std::ostringstream text;
  text << "family,descriptor,m,k,n,R,beta,V_N\n";
  std::vector<std::string> descriptors;
  for (int k = 1; k <= 4; ++k) {
    descriptors.push_back("gaussian:k=" + std::to_string(k));
  }
  for (int m = 2; m <= 5; ++m) {
    for (int k = 1; k <= 3; ++k) {
      descriptors.push_back("cylinder:m=" + std::to_string(m) + ",k=" + std::to_string(k));
    }
  }
  for (const std::string& d : descriptors) {
    const RigidShrinker model = parse_model(d);
    text << model.family() << ",\"" << d << "\"," << model.factor_dim() << ',' << model.euclidean_rank() << ','
         << model.dim() << ',' << format_R(model.scalar_curvature()) << ',' << num(model.volume_exponent()) << ','
         << num(model.factor_volume()) << '\n';
  }
  text << "# R = 1/2 would need m = 1; no 1-dimensional factor has Ric = g/2, so it is not constructible\n";
  emit(config.out, text.str(), out);
  return exit_code::kOk;
}

int run_volume(const RigidShrinker& model, const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::vector<double> grid = make_grid(config);
  std::ostringstream csv;
  csv << "# shrinkerlab volume v1 model=" << config.model << "\n";
  csv << "t,rho,volume,area,sqrt_t_dV_dt\n";
  std::vector<double> rhos, volumes;
  double area_residual = 0.0;
  for (double t : grid) {
    const double volume = sublevel_volume(model, t);
    const double derivative = log_stencil_derivative([&model](double s) { return sublevel_volume(model, s); }, t);
    const double area = boundary_area(model, t);
    area_residual = std::max(area_residual, relative_difference(std::sqrt(t) * derivative, area));
    csv << num(t) << ',' << num(rho_from_t(t)) << ',' << num(volume) << ',' << num(area) << ','
        << num(std::sqrt(t) * derivative) << '\n';
    rhos.push_back(rho_from_t(t));
    volumes.push_back(volume);
  }
  emit(config.out, csv.str(), out);

  IdentityReport report;
  if (rhos.size() >= 2) {
    report.add(coarea_check(model, rhos));
  }
  const double slope = loglog_slope(grid, volumes);
  IdentityEntry law = judged("geometry.volume_slope", {{"model", model.to_json()}, {"grid", grid_json(grid)}},
                             std::abs(slope - model.volume_exponent()), 1e-9, "closed_form");
  law.details = {{"slope", slope}};
  report.add(std::move(law));
  report.add(judged("geometry.boundary_area", {{"model", model.to_json()}, {"grid", grid_json(grid)}},
                    area_residual, 1e-6, "closed_form"));
  return finish(report, run_info("volume", config), config, out, err, false);
}

int run_frequency(const RigidShrinker& model, const RunConfig& config, std::ostream& out, std::ostream& err) {
  const HarmonicCombination u = parse_modes(config.modes, "--modes");
  const std::vector<double> grid = make_grid(config);
  const FrequencyOptions options = frequency_options(config);
  std::vector<Engine> engines;
  if (config.engine == "both") {
    engines = {Engine::closed_form, Engine::quadrature};
  } else {
    engines = {parse_engine(config.engine)};
  }

  std::ostringstream csv;
  csv << "# shrinkerlab frequency v1 model=" << config.model << " modes=" << config.modes
      << " alpha=" << num(config.alpha) << "\n";
  csv << "t,H,J,h,N,engine,ode_residual,logderiv_residual\n";
  IdentityReport report;
  for (Engine engine : engines) {
    const FrequencyCalculator calc(model, u, config.alpha, engine, options);
    const FrequencyProfile profile = compute_profile(calc, grid);
    for (const FrequencySample& s : profile.samples) {
      const double point[] = {s.t};
      const double ode = u.is_zero() ? 0.0 : check_H_ode(calc, point).residual;
      const double logd = u.is_zero() ? 0.0 : check_log_derivative(calc, point).residual;
      csv << num(s.t) << ',' << num(s.H) << ',' << num(s.J) << ',' << num(s.h) << ',' << num(s.N) << ','
          << to_string(engine) << ',' << num(ode) << ',' << num(logd) << '\n';
    }
    if (u.is_zero()) {
      continue;
    }
    report.add(check_H_ode(calc, grid));
    report.add(check_log_derivative(calc, grid));
    report.add(check_mass_bounds(calc, grid));
    if (config.alpha >= 2.0 && grid.size() >= 2) {
      report.add(check_monotone_frequency(calc, grid));
    }
    if (config.alpha == 0.0) {
      report.add(check_nlim_identity(calc, grid));
    }
    const HarmonicCombination nonzero = u.without_zero_terms();
    if (nonzero.terms().size() == 1 && nonzero.is_polynomial()) {
      report.add(check_pure_mode_law(calc, grid));
    }
  }
  if (engines.size() == 2 && u.is_polynomial()) {
    report.add(check_engine_agreement(model, u, config.alpha, grid, options));
  }
  emit(config.out, csv.str(), out);
  return finish(report, run_info("frequency", config), config, out, err, false);
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  VerifyConfig vc;
  if (config.model_given) {
    parse_model(config.model);
    vc.models = {config.model};
  }
  vc.seed = config.seed;
  vc.frequency = frequency_options(config);
  vc.mc_samples = config.mc_samples;
  vc.combinations = config.combinations;
  vc.t_min = config.t_min;
  vc.t_max = config.t_max;
  vc.points_per_decade = config.ppd;
  const IdentityReport report = run_verification(vc);
  return finish(report, verify_run_info(vc), config, out, err, true);
}

int run_doubling(const RigidShrinker& model, const RunConfig& config, std::ostream& out, std::ostream& err) {
  const HarmonicCombination u = parse_modes(config.modes, "--modes");
  const DoublingParameters params{config.alpha, config.T, config.epsilon, config.lambda, 20};
  const DoublingResult result = doubling_records(model, u, params);
  std::ostringstream csv;
  csv << "# shrinkerlab doubling v1 model=" << config.model << " modes=" << config.modes
      << " alpha=" << num(config.alpha) << " T=" << num(config.T) << " epsilon=" << num(config.epsilon)
      << " lambda=" << num(config.lambda) << "\n";
  csv << "t,ratio,L_emp,L_tight,L_paper,verdict\n";
  for (const DoublingRecord& r : result.records) {
    csv << num(r.t) << ',' << num(r.ratio) << ',' << num(r.L_emp) << ',' << num(r.L_tight) << ','
        << num(r.L_paper) << ',' << to_string(r.verdict) << '\n';
  }
  emit(config.out, csv.str(), out);
  IdentityReport report = doubling_check(model, u, params);
  report.add(ball_doubling_check(model, u, log_grid(std::max(config.t_min, 1e-3), std::max(config.t_min, 1e-3) * 100.0, 8)));
  return finish(report, run_info("doubling", config), config, out, err, false);
}

int run_dimension(const RigidShrinker& model, const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  csv << "# shrinkerlab dimension v1 model=" << config.model
      << (model.family() == "gaussian" ? " (dim H_d)" : " (constructed-family dimension)") << "\n";
  csv << "degree_cap,growth_order,dim\n";
  for (const auto& [d, dim] : dimension_table(model, config.d_max)) {
    csv << d << ',' << num(0.5 * d) << ',' << dim << '\n';
  }
  emit(config.out, csv.str(), out);
  IdentityReport report;
  report.add(dimension_check(model, config.d_max));
  return finish(report, run_info("dimension", config), config, out, err, false);
}

}  // namespace

int run(const std::string& subcommand, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (subcommand == "models") {
      return run_models(config, out);
    }
    if (subcommand == "verify") {
      return run_verify(config, out, err);
    }
    const RigidShrinker model = parse_model(config.model);
    if (subcommand == "volume") {
      return run_volume(model, config, out, err);
    }
    if (subcommand == "frequency") {
      return run_frequency(model, config, out, err);
    }
    if (subcommand == "doubling") {
      return run_doubling(model, config, out, err);
    }
    if (subcommand == "dimension") {
      return run_dimension(model, config, out, err);
    }
    err << "unknown subcommand '" << subcommand << "'\n";
    return exit_code::kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kFailedChecks;
  }
}

}  // namespace shrinker
