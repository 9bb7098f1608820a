#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "shrinker/rigid_shrinker.hpp"

namespace shrinker {

/// Solid harmonic r^d Y_{d,idx}(y/|y|) on the Euclidean factor, with
/// ∫_{S^{k-1}} Y² = 1. Angular bases by rank:
///   k = 1: d ∈ {0, 1}; Y_0 = 1/√2, Y_1 = sign/√2 (so u ∝ y).
///   k = 2: d = 0 → 1/√(2π); d ≥ 1 → cos dθ/√π (idx 0), sin dθ/√π (idx 1).
///   k = 3: real spherical harmonics with polar axis y₁; idx 0 is m = 0,
///          idx 2j-1 is cos(jφ), idx 2j is sin(jφ), φ = atan2(y₃, y₂).
///   k ≥ 4: zonal Gegenbauer harmonic about y₁ only (idx 0).
/// In every rank, d = 1, idx = 0 is proportional to y₁.
struct PolynomialMode {
  int degree = 0;
  int angular_index = 0;
  auto operator<=>(const PolynomialMode&) const = default;
};

enum class Parity { even, odd };

/// φ_j(θ) · cosh(√μ_j y) (even) or φ_j(θ) · sinh(√μ_j y) (odd) on a k = 1
/// cylinder, with ∫_N φ_j² = 1 and ∫_N |∇φ_j|² = μ_j.
struct ExponentialMode {
  int eigen_index = 1;
  Parity parity = Parity::even;
  auto operator<=>(const ExponentialMode&) const = default;
};

using Mode = std::variant<PolynomialMode, ExponentialMode>;

struct Term {
  double coefficient = 0.0;
  Mode mode;
};

/// Finite sum of pairwise distinct modes. The default-constructed value is
/// the zero function. Distinct modes are L²-orthogonal on every sphere
/// |y| = r and on N, so all quadratic integrals are diagonal sums.
class HarmonicCombination {
public:
  HarmonicCombination() = default;
  explicit HarmonicCombination(std::vector<Term> terms);

  static HarmonicCombination single(Mode mode, double coefficient = 1.0);
  /// The constant function with the given value on a rank-k model.
  static HarmonicCombination constant(int k, double value);
  /// u(y) = y₁ on a rank-k model.
  static HarmonicCombination coordinate_y1(int k);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const;
  bool is_polynomial() const;
  /// Largest polynomial degree among nonzero terms; -1 when there is none.
  int max_degree() const;
  int min_degree() const;
  /// Coefficient of the degree-0 mode (0 if absent).
  double constant_coefficient() const;

  HarmonicCombination scaled(double factor) const;
  HarmonicCombination without_zero_terms() const;
  HarmonicCombination plus(const HarmonicCombination& other) const;

  nlohmann::json to_json() const;
  std::string to_descriptor() const;

private:
  std::vector<Term> terms_;
};

/// Number of constructed angular functions of degree d in rank k.
int angular_basis_size(int k, int degree);
/// Y_{d,idx} at a unit vector ω ∈ S^{k-1}.
double angular_value(int k, const PolynomialMode& mode, std::span<const double> unit);
/// sup over S^{k-1} of |Y_{d,idx}|.
double angular_sup(int k, const PolynomialMode& mode);
/// Coefficient c with c · r Y_{1,0} = y₁, i.e. √(σ_{k-1}/k).
double y1_coefficient(int k);

/// Throws DomainError if u uses a mode the model cannot carry.
void validate_for(const RigidShrinker& model, const HarmonicCombination& u);

double evaluate(const RigidShrinker& model, const HarmonicCombination& u, const Point& p);

/// ∫_N u(θ, y)² dθ at a Euclidean point y.
double fiber_square(const RigidShrinker& model, const HarmonicCombination& u, std::span<const double> y);

/// ∫_N u(θ, 0)² dθ.
double fiber_square_at_origin(const RigidShrinker& model, const HarmonicCombination& u);

/// t-power d of sup_{D_t}|u| ≍ t^d: max degree / 2, +∞ when an exponential
/// mode is present. Throws DomainError for the zero function.
double growth_order(const HarmonicCombination& u);

/// Dimension of homogeneous harmonic polynomials of degree j in k variables:
/// C(k+j-1, j) - C(k+j-3, j-2).
unsigned long long homogeneous_harmonic_dimension(int k, int degree);

/// Σ_{j ≤ D} of the above for the model's Euclidean rank.
unsigned long long dim_poly_space(const RigidShrinker& model, int degree_cap);

/// Upper envelope of |u| over D_t: Σ|c_i| ρ^{d_i} sup|Y_i| (plus the cosh/sinh
/// envelope at |y| = ρ), ρ = 2√t. Exact for a single mode.
double sup_on_sublevel(const HarmonicCombination& u, const RigidShrinker& model, double t);

/// Lower bound for u over D_t: the constant part minus the envelope of the
/// remaining terms.
double inf_on_sublevel(const HarmonicCombination& u, const RigidShrinker& model, double t);

/// Fourth-order finite-difference Laplacian of the polynomial part of u at
/// `points` seeded random points of |y| ≤ 2, relative to the local scale
/// Σ|∂_ii u| + (|u| + sup_{|y|≤2}|u|)/max(1,|y|)². Exponential terms are left out (their
/// θ-Laplacian cancels analytically).
IdentityEntry check_harmonicity(const RigidShrinker& model, const HarmonicCombination& u, std::size_t points,
                                std::uint64_t seed);

/// Parses a list of `poly:d=<int>,idx=<int>,c=<float>` and
/// `exp:j=<int>,parity=even|odd,c=<float>` items separated by ';'.
HarmonicCombination parse_modes(const std::string& descriptor, const std::string& source = "modes");

}  // namespace shrinker
