#include "shrinker/rigid_shrinker.hpp"

#include <algorithm>
#include <cmath>

#include "shrinker/descriptor_lexer.hpp"
#include "shrinker/error.hpp"
#include "shrinker/numerics.hpp"
#include "shrinker/special_functions.hpp"

namespace shrinker {

EinsteinFactor::EinsteinFactor(int dim, double volume, std::vector<double> eigenvalues,
                               std::optional<EigenfunctionHook> hook)
    : dim_(dim), volume_(volume), eigenvalues_(std::move(eigenvalues)), hook_(std::move(hook)) {
  if (dim_ < 0) {
    throw DomainError("EinsteinFactor: negative dimension");
  }
  if (dim_ == 1) {
    // A 1-manifold is flat, so Ric = g/2 is impossible; this is what rules out R = 1/2.
    throw DomainError("EinsteinFactor: no 1-dimensional Einstein factor with Ric = g/2 exists");
  }
  if (!(volume_ > 0.0)) {
    throw DomainError("EinsteinFactor: volume must be positive");
  }
  if (eigenvalues_.empty() || eigenvalues_.front() != 0.0) {
    throw DomainError("EinsteinFactor: spectrum must start with eigenvalue 0");
  }
  for (std::size_t i = 1; i < eigenvalues_.size(); ++i) {
    if (!(eigenvalues_[i] > eigenvalues_[i - 1])) {
      throw DomainError("EinsteinFactor: eigenvalues must be strictly increasing");
    }
  }
}

EinsteinFactor EinsteinFactor::absent() { return EinsteinFactor(0, 1.0, {0.0}); }

EinsteinFactor EinsteinFactor::round_sphere(int m, int levels) {
  if (m < 2) {
    throw DomainError("round_sphere: sphere factor needs m >= 2");
  }
  if (levels < 1) {
    throw DomainError("round_sphere: need at least one eigenvalue level");
  }
  const double radius_sq = 2.0 * (m - 1);
  const double volume = unit_sphere_area(m + 1) * std::pow(radius_sq, 0.5 * m);
  std::vector<double> eigenvalues;
  for (int l = 0; l < levels; ++l) {
    eigenvalues.push_back(static_cast<double>(l) * (l + m - 1) / radius_sq);
  }
  const double first_norm = std::sqrt((m + 1) / volume);
  EigenfunctionHook hook{
      [first_norm, m](int j, std::span<const double> theta) {
        if (j != 1) {
          throw DomainError("round_sphere hook: only the first eigenspace (j = 1) is available");
        }
        if (theta.size() != static_cast<std::size_t>(m + 1)) {
          throw DomainError("round_sphere hook: θ must be a unit vector in R^{m+1}");
        }
        return first_norm * theta[0];
      },
      [first_norm](int j) {
        if (j != 1) {
          throw DomainError("round_sphere hook: only the first eigenspace (j = 1) is available");
        }
        return first_norm;
      }};
  EinsteinFactor factor(m, volume, std::move(eigenvalues), std::move(hook));
  factor.round_sphere_ = true;
  return factor;
}

RigidShrinker::RigidShrinker(EinsteinFactor factor, int euclidean_rank)
    : factor_(std::move(factor)), k_(euclidean_rank) {
  if (k_ < 1) {
    throw DomainError("RigidShrinker: Euclidean rank must be positive");
  }
}

RigidShrinker RigidShrinker::gaussian(int k) { return RigidShrinker(EinsteinFactor::absent(), k); }

RigidShrinker RigidShrinker::cylinder(int m, int k) {
  return RigidShrinker(EinsteinFactor::round_sphere(m), k);
}

std::string RigidShrinker::family() const {
  if (factor_.dim() == 0) {
    return "gaussian";
  }
  return factor_.is_round_sphere() ? "cylinder" : "custom";
}

nlohmann::json RigidShrinker::to_json() const {
  return {{"family", family()},           {"m", factor_dim()},
          {"k", euclidean_rank()},        {"n", dim()},
          {"R", scalar_curvature()},      {"V_N", factor_volume()}};
}

double rho_from_t(double t) {
  if (!(t >= 0.0)) {
    throw DomainError("rho_from_t: t must be nonnegative");
  }
  return 2.0 * std::sqrt(t);
}

double t_from_rho(double rho) {
  if (!(rho >= 0.0)) {
    throw DomainError("t_from_rho: rho must be nonnegative");
  }
  return 0.25 * rho * rho;
}

namespace {

void check_point(const RigidShrinker& model, const Point& p) {
  if (p.y.size() != static_cast<std::size_t>(model.euclidean_rank())) {
    throw DomainError("point has " + std::to_string(p.y.size()) + " Euclidean coordinates, model has k = " +
                      std::to_string(model.euclidean_rank()));
  }
}

void check_t(double t, const char* what) {
  if (!(t > 0.0)) {
    throw DomainError(std::string(what) + ": t must be positive");
  }
}

}  // namespace

double potential(const RigidShrinker& model, const Point& p) {
  check_point(model, p);
  double r2 = 0.0;
  for (double c : p.y) {
    r2 += c * c;
  }
  return 0.25 * r2;
}

std::vector<double> potential_gradient(const RigidShrinker& model, const Point& p) {
  check_point(model, p);
  std::vector<double> gradient(p.y);
  for (double& c : gradient) {
    c *= 0.5;
  }
  return gradient;
}

double potential_laplacian(const RigidShrinker& model) { return model.volume_exponent(); }

double sublevel_volume(const RigidShrinker& model, double t) {
  check_t(t, "sublevel_volume");
  return distance_ball_volume(model, rho_from_t(t));
}

double boundary_area(const RigidShrinker& model, double t) {
  check_t(t, "boundary_area");
  const int k = model.euclidean_rank();
  return model.factor_volume() * unit_sphere_area(k) * std::pow(rho_from_t(t), k - 1);
}

double distance_ball_volume(const RigidShrinker& model, double r) {
  if (!(r > 0.0)) {
    throw DomainError("distance_ball_volume: radius must be positive");
  }
  const int k = model.euclidean_rank();
  return model.factor_volume() * unit_ball_volume(k) * std::pow(r, k);
}

IdentityEntry coarea_check(const RigidShrinker& model, std::span<const double> rho_grid) {
  validate_grid(rho_grid, 2);
  const double exponent = model.dim() - 2.0 * model.scalar_curvature();
  const auto volume = [&model](double r) { return distance_ball_volume(model, r); };
  double max_residual = 0.0;
  std::vector<double> volumes;
  for (double r : rho_grid) {
    const double v = volume(r);
    const double rv_prime = r * log_stencil_derivative(volume, r);
    max_residual = std::max(max_residual, std::abs(exponent * v - rv_prime) / std::abs(rv_prime));
    volumes.push_back(v);
  }
  const double slope = loglog_slope(rho_grid, volumes);
  const double slope_error = std::abs(slope - exponent);
  IdentityEntry entry = judged("geometry.coarea", {{"model", model.to_json()}, {"points", rho_grid.size()}},
                               std::max(max_residual, slope_error), 1e-8, "closed-form+richardson");
  entry.details = {{"slope", slope}, {"expected_slope", exponent}, {"ode_residual", max_residual}};
  return entry;
}

RigidShrinker parse_model(const std::string& descriptor) {
  DescriptorLexer lex("model", descriptor);
  const std::string family = lex.identifier();
  lex.expect(':');
  if (family == "gaussian") {
    lex.keyword("k");
    lex.expect('=');
    const auto [k, k_column] = lex.integer();
    lex.finish();
    if (k < 1) {
      throw ParseError("model", 1, k_column, "Euclidean rank k must be at least 1");
    }
    return RigidShrinker::gaussian(static_cast<int>(k));
  }
  if (family == "cylinder") {
    lex.keyword("m");
    lex.expect('=');
    const auto [m, m_column] = lex.integer();
    lex.expect(',');
    lex.keyword("k");
    lex.expect('=');
    const auto [k, k_column] = lex.integer();
    lex.finish();
    if (m == 1) {
      throw ParseError("model", 1, m_column,
                       "m = 1 is impossible: no 1-dimensional Einstein factor (R = 1/2 does not occur)");
    }
    if (m < 2) {
      throw ParseError("model", 1, m_column, "cylinder factor dimension m must be at least 2");
    }
    if (k < 1) {
      throw ParseError("model", 1, k_column, "Euclidean rank k must be at least 1");
    }
    return RigidShrinker::cylinder(static_cast<int>(m), static_cast<int>(k));
  }
  throw ParseError("model", 1, 1, "unknown model family '" + family + "' (expected gaussian or cylinder)");
}

}  // namespace shrinker
