#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "shrinker/report.hpp"

namespace shrinker {

/// Pointwise access to Laplace eigenfunctions of an Einstein factor, where a
/// closed form is known. `value(j, θ)` and `sup(j)` throw DomainError for
/// eigen indices they do not cover.
struct EigenfunctionHook {
  std::function<double(int, std::span<const double>)> value;
  std::function<double(int)> sup;
};

/// Compact Einstein manifold with Ric = g/2, described only through its
/// dimension, volume and Laplace spectrum. Dimension 0 stands for "no factor".
class EinsteinFactor {
public:
  EinsteinFactor(int dim, double volume, std::vector<double> eigenvalues,
                 std::optional<EigenfunctionHook> hook = std::nullopt);

  /// Point factor of the Gaussian soliton: m = 0, V_N = 1, spectrum {0}.
  static EinsteinFactor absent();

  /// Round S^m of radius sqrt(2(m-1)), with the first `levels` distinct
  /// eigenvalues l(l+m-1)/(2(m-1)). Carries a hook for the first eigenspace:
  /// θ is a unit vector in R^{m+1} and φ_1(θ) = θ_1 sqrt((m+1)/V_N).
  static EinsteinFactor round_sphere(int m, int levels = 16);

  int dim() const { return dim_; }
  double volume() const { return volume_; }
  std::span<const double> eigenvalues() const { return eigenvalues_; }
  const std::optional<EigenfunctionHook>& hook() const { return hook_; }
  bool is_round_sphere() const { return round_sphere_; }

private:
  int dim_;
  double volume_;
  std::vector<double> eigenvalues_;
  std::optional<EigenfunctionHook> hook_;
  bool round_sphere_ = false;
};

/// Rigid shrinker N^m × R^k with f(y) = |y|²/4, normalised so |∇f|² = f.
/// Immutable after construction.
class RigidShrinker {
public:
  RigidShrinker(EinsteinFactor factor, int euclidean_rank);

  static RigidShrinker gaussian(int k);
  static RigidShrinker cylinder(int m, int k);

  const EinsteinFactor& factor() const { return factor_; }
  int factor_dim() const { return factor_.dim(); }
  int euclidean_rank() const { return k_; }
  int dim() const { return factor_.dim() + k_; }
  double scalar_curvature() const { return 0.5 * factor_.dim(); }
  double factor_volume() const { return factor_.volume(); }

  /// n/2 - R = k/2, which is also Δf.
  double volume_exponent() const { return 0.5 * k_; }

  std::string family() const;
  nlohmann::json to_json() const;

private:
  EinsteinFactor factor_;
  int k_;
};

/// Point of N × R^k. θ is consumed only by eigenfunction hooks.
struct Point {
  std::vector<double> y;
  std::vector<double> theta;
};

/// Sublevel ↔ distance-like coordinate: ρ = 2√t.
double rho_from_t(double t);
double t_from_rho(double rho);

/// f(p) = |y|²/4.
double potential(const RigidShrinker& model, const Point& p);
/// ∇f = y/2 on the Euclidean factor, zero along N.
std::vector<double> potential_gradient(const RigidShrinker& model, const Point& p);
/// Δf = k/2 everywhere.
double potential_laplacian(const RigidShrinker& model);

/// Vol(D_t) = V_N ω_k (2√t)^k.
double sublevel_volume(const RigidShrinker& model, double t);
/// Area(∂D_t) = √t · d/dt Vol(D_t) = V_N σ_{k-1} (2√t)^{k-1}.
double boundary_area(const RigidShrinker& model, double t);
/// Vol(Ω(r)) = Vol{ρ ≤ r} = V_N ω_k r^k.
double distance_ball_volume(const RigidShrinker& model, double r);

/// Co-area identity (n - 2R) V(r) = r V'(r) on a grid of ρ-radii, with V'
/// from Richardson differences, plus the log-log slope of V against r.
IdentityEntry coarea_check(const RigidShrinker& model, std::span<const double> rho_grid);

/// Parses `gaussian:k=<int>` or `cylinder:m=<int>,k=<int>`.
RigidShrinker parse_model(const std::string& descriptor);

}  // namespace shrinker
