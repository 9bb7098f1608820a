#include "shrinker/harmonic_family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "shrinker/descriptor_lexer.hpp"
#include "shrinker/error.hpp"
#include "shrinker/special_functions.hpp"

namespace shrinker {
namespace {

// P_l^m(x) without the Condon-Shortley phase.
double associated_legendre(int l, int m, double x) {
  double pmm = 1.0;
  const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
  double odd = 1.0;
  for (int i = 1; i <= m; ++i) {
    pmm *= odd * somx2;
    odd += 2.0;
  }
  if (l == m) {
    return pmm;
  }
  double pmmp1 = x * (2 * m + 1) * pmm;
  if (l == m + 1) {
    return pmmp1;
  }
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

double spherical_norm(int l, int m) {
  double ratio = 1.0;  // (l-m)!/(l+m)!
  for (int i = l - m + 1; i <= l + m; ++i) {
    ratio /= i;
  }
  return std::sqrt((m == 0 ? 1.0 : 2.0) * (2 * l + 1) / (4.0 * std::numbers::pi) * ratio);
}

double gegenbauer(int d, double lambda, double x) {
  if (d == 0) {
    return 1.0;
  }
  double previous = 1.0;
  double current = 2.0 * lambda * x;
  for (int n = 2; n <= d; ++n) {
    const double next = (2.0 * x * (n + lambda - 1.0) * current - (n + 2.0 * lambda - 2.0) * previous) / n;
    previous = current;
    current = next;
  }
  return current;
}

// ∫_{S^{k-1}} C_d^λ(ω₁)² dσ with λ = (k-2)/2, k ≥ 4.
double zonal_norm(int k, int d) {
  const double lambda = 0.5 * (k - 2);
  const double log_value = std::log(std::numbers::pi) + (1.0 - 2.0 * lambda) * std::log(2.0) +
                           log_gamma(d + 2.0 * lambda) - log_gamma(d + 1.0) - std::log(d + lambda) -
                           2.0 * log_gamma(lambda);
  return std::sqrt(unit_sphere_area(k - 1) * std::exp(log_value));
}

// k = 3: idx → order m (≥ 0) and whether the azimuthal factor is sin.
std::pair<int, bool> spherical_order(int angular_index) {
  if (angular_index == 0) {
    return {0, false};
  }
  return {(angular_index + 1) / 2, angular_index % 2 == 0};
}

double max_abs_legendre(int l, int m) {
  // |P_l^m| is even or odd in x, so search [0, 1]: dense scan, then golden section.
  constexpr int kSamples = 4000;
  double best_x = 0.0;
  double best = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = static_cast<double>(i) / kSamples;
    const double v = std::abs(associated_legendre(l, m, x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  double lo = std::max(0.0, best_x - 1.0 / kSamples);
  double hi = std::min(1.0, best_x + 1.0 / kSamples);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int iter = 0; iter < 80; ++iter) {
    const double a = hi - inv_phi * (hi - lo);
    const double b = lo + inv_phi * (hi - lo);
    if (std::abs(associated_legendre(l, m, a)) > std::abs(associated_legendre(l, m, b))) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return std::max(best, std::abs(associated_legendre(l, m, 0.5 * (lo + hi))));
}

double profile_value(Parity parity, double a, double y) {
  return parity == Parity::even ? std::cosh(a * y) : std::sinh(a * y);
}

double euclidean_norm(std::span<const double> y) {
  double r2 = 0.0;
  for (double c : y) {
    r2 += c * c;
  }
  return std::sqrt(r2);
}

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace

HarmonicCombination::HarmonicCombination(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!std::isfinite(terms_[i].coefficient)) {
      throw DomainError("HarmonicCombination: coefficients must be finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (terms_[i].mode == terms_[j].mode) {
        throw DomainError("HarmonicCombination: modes must be pairwise distinct");
      }
    }
  }
}

HarmonicCombination HarmonicCombination::single(Mode mode, double coefficient) {
  return HarmonicCombination({Term{coefficient, mode}});
}

HarmonicCombination HarmonicCombination::constant(int k, double value) {
  return single(PolynomialMode{0, 0}, value * std::sqrt(unit_sphere_area(k)));
}

HarmonicCombination HarmonicCombination::coordinate_y1(int k) {
  return single(PolynomialMode{1, 0}, y1_coefficient(k));
}

bool HarmonicCombination::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coefficient == 0.0; });
}

bool HarmonicCombination::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.coefficient == 0.0 || std::holds_alternative<PolynomialMode>(t.mode);
  });
}

int HarmonicCombination::max_degree() const {
  int degree = -1;
  for (const Term& t : terms_) {
    if (t.coefficient != 0.0 && std::holds_alternative<PolynomialMode>(t.mode)) {
      degree = std::max(degree, std::get<PolynomialMode>(t.mode).degree);
    }
  }
  return degree;
}

int HarmonicCombination::min_degree() const {
  int degree = std::numeric_limits<int>::max();
  for (const Term& t : terms_) {
    if (t.coefficient != 0.0 && std::holds_alternative<PolynomialMode>(t.mode)) {
      degree = std::min(degree, std::get<PolynomialMode>(t.mode).degree);
    }
  }
  return degree == std::numeric_limits<int>::max() ? -1 : degree;
}

double HarmonicCombination::constant_coefficient() const {
  for (const Term& t : terms_) {
    if (const auto* p = std::get_if<PolynomialMode>(&t.mode); p != nullptr && p->degree == 0) {
      return t.coefficient;
    }
  }
  return 0.0;
}

HarmonicCombination HarmonicCombination::scaled(double factor) const {
  std::vector<Term> terms = terms_;
  for (Term& t : terms) {
    t.coefficient *= factor;
  }
  return HarmonicCombination(std::move(terms));
}

HarmonicCombination HarmonicCombination::without_zero_terms() const {
  std::vector<Term> terms;
  std::copy_if(terms_.begin(), terms_.end(), std::back_inserter(terms),
               [](const Term& t) { return t.coefficient != 0.0; });
  return HarmonicCombination(std::move(terms));
}

HarmonicCombination HarmonicCombination::plus(const HarmonicCombination& other) const {
  std::vector<Term> terms = terms_;
  for (const Term& t : other.terms_) {
    auto it = std::find_if(terms.begin(), terms.end(), [&t](const Term& s) { return s.mode == t.mode; });
    if (it != terms.end()) {
      it->coefficient += t.coefficient;
    } else {
      terms.push_back(t);
    }
  }
  return HarmonicCombination(std::move(terms));
}

nlohmann::json HarmonicCombination::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const Term& t : terms_) {
    if (const auto* p = std::get_if<PolynomialMode>(&t.mode)) {
      terms.push_back({{"type", "poly"}, {"d", p->degree}, {"idx", p->angular_index}, {"c", t.coefficient}});
    } else {
      const auto& e = std::get<ExponentialMode>(t.mode);
      terms.push_back({{"type", "exp"},
                       {"j", e.eigen_index},
                       {"parity", e.parity == Parity::even ? "even" : "odd"},
                       {"c", t.coefficient}});
    }
  }
  return terms;
}

std::string HarmonicCombination::to_descriptor() const {
  std::string out;
  for (const Term& t : terms_) {
    if (!out.empty()) {
      out += ';';
    }
    if (const auto* p = std::get_if<PolynomialMode>(&t.mode)) {
      out += "poly:d=" + std::to_string(p->degree) + ",idx=" + std::to_string(p->angular_index) +
             ",c=" + format_number(t.coefficient);
    } else {
      const auto& e = std::get<ExponentialMode>(t.mode);
      out += "exp:j=" + std::to_string(e.eigen_index) +
             ",parity=" + (e.parity == Parity::even ? "even" : "odd") + ",c=" + format_number(t.coefficient);
    }
  }
  return out;
}

int angular_basis_size(int k, int degree) {
  if (k < 1 || degree < 0) {
    return 0;
  }
  switch (k) {
    case 1:
      return degree <= 1 ? 1 : 0;
    case 2:
      return degree == 0 ? 1 : 2;
    case 3:
      return 2 * degree + 1;
    default:
      return 1;
  }
}

double y1_coefficient(int k) { return std::sqrt(unit_sphere_area(k) / k); }

double angular_value(int k, const PolynomialMode& mode, std::span<const double> unit) {
  if (mode.angular_index < 0 || mode.angular_index >= angular_basis_size(k, mode.degree)) {
    throw DomainError("angular_value: no angular function (d=" + std::to_string(mode.degree) +
                      ", idx=" + std::to_string(mode.angular_index) + ") in rank " + std::to_string(k));
  }
  if (unit.size() != static_cast<std::size_t>(k)) {
    throw DomainError("angular_value: direction has wrong dimension");
  }
  const int d = mode.degree;
  switch (k) {
    case 1:
      return (d == 0 ? 1.0 : (unit[0] >= 0.0 ? 1.0 : -1.0)) / std::numbers::sqrt2;
    case 2: {
      if (d == 0) {
        return 1.0 / std::sqrt(2.0 * std::numbers::pi);
      }
      const double theta = std::atan2(unit[1], unit[0]);
      const double trig = mode.angular_index == 0 ? std::cos(d * theta) : std::sin(d * theta);
      return trig / std::sqrt(std::numbers::pi);
    }
    case 3: {
      const auto [m, use_sin] = spherical_order(mode.angular_index);
      const double x = std::clamp(unit[0], -1.0, 1.0);
      const double phi = std::atan2(unit[2], unit[1]);
      const double azimuthal = m == 0 ? 1.0 : (use_sin ? std::sin(m * phi) : std::cos(m * phi));
      return spherical_norm(d, m) * associated_legendre(d, m, x) * azimuthal;
    }
    default:
      return gegenbauer(d, 0.5 * (k - 2), std::clamp(unit[0], -1.0, 1.0)) / zonal_norm(k, d);
  }
}

double angular_sup(int k, const PolynomialMode& mode) {
  if (mode.angular_index < 0 || mode.angular_index >= angular_basis_size(k, mode.degree)) {
    throw DomainError("angular_sup: mode not available in this rank");
  }
  const int d = mode.degree;
  switch (k) {
    case 1:
      return 1.0 / std::numbers::sqrt2;
    case 2:
      return d == 0 ? 1.0 / std::sqrt(2.0 * std::numbers::pi) : 1.0 / std::sqrt(std::numbers::pi);
    case 3: {
      const auto [m, use_sin] = spherical_order(mode.angular_index);
      (void)use_sin;
      // |P_l| peaks at the poles; for m > 0 the azimuthal factor reaches 1.
      return spherical_norm(d, m) * (m == 0 ? 1.0 : max_abs_legendre(d, m));
    }
    default: {
      const double lambda = 0.5 * (k - 2);
      // C_d^λ attains its maximum modulus at ±1 for λ > 0.
      const double at_pole = std::exp(log_gamma(d + 2.0 * lambda) - log_gamma(d + 1.0) - log_gamma(2.0 * lambda));
      return at_pole / zonal_norm(k, d);
    }
  }
}

void validate_for(const RigidShrinker& model, const HarmonicCombination& u) {
  const int k = model.euclidean_rank();
  for (const Term& t : u.terms()) {
    if (const auto* p = std::get_if<PolynomialMode>(&t.mode)) {
      if (p->degree < 0) {
        throw DomainError("polynomial mode degree must be nonnegative");
      }
      if (angular_basis_size(k, p->degree) == 0) {
        throw DomainError("no harmonic polynomial of degree " + std::to_string(p->degree) + " in " +
                          std::to_string(k) + " variable(s)");
      }
      if (p->angular_index < 0 || p->angular_index >= angular_basis_size(k, p->degree)) {
        throw DomainError("angular index " + std::to_string(p->angular_index) + " out of range for degree " +
                          std::to_string(p->degree) + " in rank " + std::to_string(k));
      }
    } else {
      const auto& e = std::get<ExponentialMode>(t.mode);
      if (k != 1) {
        throw DomainError("exponential modes are only constructed on k = 1 cylinders");
      }
      const auto spectrum = model.factor().eigenvalues();
      if (e.eigen_index < 1 || static_cast<std::size_t>(e.eigen_index) >= spectrum.size()) {
        throw DomainError("exponential mode eigen index " + std::to_string(e.eigen_index) +
                          " not in the factor spectrum");
      }
    }
  }
}

double evaluate(const RigidShrinker& model, const HarmonicCombination& u, const Point& p) {
  validate_for(model, u);
  const int k = model.euclidean_rank();
  if (p.y.size() != static_cast<std::size_t>(k)) {
    throw DomainError("evaluate: point dimension does not match the model");
  }
  const double r = euclidean_norm(p.y);
  std::vector<double> unit(static_cast<std::size_t>(k), 0.0);
  if (r > 0.0) {
    for (int i = 0; i < k; ++i) {
      unit[static_cast<std::size_t>(i)] = p.y[static_cast<std::size_t>(i)] / r;
    }
  } else {
    unit[0] = 1.0;
  }
  double value = 0.0;
  for (const Term& t : u.terms()) {
    if (t.coefficient == 0.0) {
      continue;
    }
    if (const auto* mode = std::get_if<PolynomialMode>(&t.mode)) {
      if (mode->degree > 0 && r == 0.0) {
        continue;
      }
      value += t.coefficient * std::pow(r, mode->degree) * angular_value(k, *mode, unit);
    } else {
      const auto& e = std::get<ExponentialMode>(t.mode);
      const auto& hook = model.factor().hook();
      if (!hook || !hook->value) {
        throw DomainError("evaluate: exponential mode needs an eigenfunction evaluation hook");
      }
      const double a = std::sqrt(model.factor().eigenvalues()[static_cast<std::size_t>(e.eigen_index)]);
      value += t.coefficient * hook->value(e.eigen_index, p.theta) * profile_value(e.parity, a, p.y[0]);
    }
  }
  return value;
}

double fiber_square(const RigidShrinker& model, const HarmonicCombination& u, std::span<const double> y) {
  validate_for(model, u);
  const int k = model.euclidean_rank();
  if (y.size() != static_cast<std::size_t>(k)) {
    throw DomainError("fiber_square: point dimension does not match the model");
  }
  const double r = euclidean_norm(y);
  std::vector<double> unit(static_cast<std::size_t>(k), 0.0);
  if (r > 0.0) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      unit[i] = y[i] / r;
    }
  } else {
    unit[0] = 1.0;
  }
  double polynomial = 0.0;
  std::map<int, double> by_eigenspace;
  for (const Term& t : u.terms()) {
    if (const auto* mode = std::get_if<PolynomialMode>(&t.mode)) {
      if (mode->degree > 0 && r == 0.0) {
        continue;
      }
      polynomial += t.coefficient * std::pow(r, mode->degree) * angular_value(k, *mode, unit);
    } else {
      const auto& e = std::get<ExponentialMode>(t.mode);
      const double a = std::sqrt(model.factor().eigenvalues()[static_cast<std::size_t>(e.eigen_index)]);
      by_eigenspace[e.eigen_index] += t.coefficient * profile_value(e.parity, a, y[0]);
    }
  }
  double total = model.factor_volume() * polynomial * polynomial;
  for (const auto& [index, amplitude] : by_eigenspace) {
    total += amplitude * amplitude;
  }
  return total;
}

double fiber_square_at_origin(const RigidShrinker& model, const HarmonicCombination& u) {
  const std::vector<double> origin(static_cast<std::size_t>(model.euclidean_rank()), 0.0);
  return fiber_square(model, u, origin);
}

double growth_order(const HarmonicCombination& u) {
  const HarmonicCombination nonzero = u.without_zero_terms();
  if (nonzero.terms().empty()) {
    throw DomainError("growth_order: undefined for the zero function");
  }
  if (!nonzero.is_polynomial()) {
    return std::numeric_limits<double>::infinity();
  }
  return 0.5 * nonzero.max_degree();
}

unsigned long long homogeneous_harmonic_dimension(int k, int degree) {
  if (k < 1 || degree < 0) {
    return 0;
  }
  return binomial(k + degree - 1, degree) - binomial(k + degree - 3, degree - 2);
}

unsigned long long dim_poly_space(const RigidShrinker& model, int degree_cap) {
  if (degree_cap < 0) {
    throw DomainError("dim_poly_space: degree cap must be nonnegative");
  }
  unsigned long long total = 0;
  for (int j = 0; j <= degree_cap; ++j) {
    total += homogeneous_harmonic_dimension(model.euclidean_rank(), j);
  }
  return total;
}

namespace {

double envelope(const HarmonicCombination& u, const RigidShrinker& model, double t, bool skip_constant) {
  validate_for(model, u);
  if (!(t > 0.0)) {
    throw DomainError("sublevel envelope: t must be positive");
  }
  const int k = model.euclidean_rank();
  const double rho = rho_from_t(t);
  double total = 0.0;
  for (const Term& t_i : u.terms()) {
    if (t_i.coefficient == 0.0) {
      continue;
    }
    if (const auto* mode = std::get_if<PolynomialMode>(&t_i.mode)) {
      if (skip_constant && mode->degree == 0) {
        continue;
      }
      total += std::abs(t_i.coefficient) * std::pow(rho, mode->degree) * angular_sup(k, *mode);
    } else {
      const auto& e = std::get<ExponentialMode>(t_i.mode);
      const auto& hook = model.factor().hook();
      if (!hook || !hook->sup) {
        throw DomainError("sup_on_sublevel: exponential mode needs an eigenfunction sup hook");
      }
      const double a = std::sqrt(model.factor().eigenvalues()[static_cast<std::size_t>(e.eigen_index)]);
      // cosh and |sinh| increase in |y|, so the envelope sits on |y| = ρ.
      total += std::abs(t_i.coefficient) * hook->sup(e.eigen_index) * std::abs(profile_value(e.parity, a, rho));
    }
  }
  return total;
}

}  // namespace

double sup_on_sublevel(const HarmonicCombination& u, const RigidShrinker& model, double t) {
  return envelope(u, model, t, false);
}

double inf_on_sublevel(const HarmonicCombination& u, const RigidShrinker& model, double t) {
  const int k = model.euclidean_rank();
  const double constant_value = u.constant_coefficient() / std::sqrt(unit_sphere_area(k));
  return constant_value - envelope(u, model, t, true);
}

HarmonicCombination parse_modes(const std::string& descriptor, const std::string& source) {
  std::vector<Term> terms;
  std::size_t start = 0;
  while (start <= descriptor.size()) {
    const std::size_t end = std::min(descriptor.find(';', start), descriptor.size());
    const std::string item = descriptor.substr(start, end - start);
    DescriptorLexer lex(source, item, start);
    if (item.empty()) {
      lex.fail("empty mode entry");
    }
    const std::size_t item_column = lex.column();
    const std::string kind = lex.identifier();
    if (kind != "poly" && kind != "exp") {
      lex.fail_at(item_column, "unknown mode kind '" + kind + "' (expected poly or exp)");
    }
    lex.expect(':');
    std::set<std::string> seen_keys;
    double coefficient = 1.0;
    long long degree = -1, index = 0, eigen_index = -1;
    std::string parity;
    bool have_degree = false, have_eigen = false, have_parity = false;
    while (true) {
      const std::size_t key_column = lex.column();
      const std::string key = lex.identifier();
      lex.expect('=');
      if (!seen_keys.insert(key).second) {
        lex.fail_at(key_column, "duplicate key '" + key + "'");
      }
      if (key == "c") {
        const auto [value, column] = lex.number();
        if (!std::isfinite(value)) {
          lex.fail_at(column, "coefficient must be finite");
        }
        coefficient = value;
      } else if (kind == "poly" && key == "d") {
        const auto [value, column] = lex.integer();
        if (value < 0) {
          lex.fail_at(column, "degree must be nonnegative");
        }
        degree = value;
        have_degree = true;
      } else if (kind == "poly" && key == "idx") {
        const auto [value, column] = lex.integer();
        if (value < 0) {
          lex.fail_at(column, "angular index must be nonnegative");
        }
        index = value;
      } else if (kind == "exp" && key == "j") {
        const auto [value, column] = lex.integer();
        if (value < 1) {
          lex.fail_at(column, "eigen index j must be at least 1");
        }
        eigen_index = value;
        have_eigen = true;
      } else if (kind == "exp" && key == "parity") {
        const std::size_t column = lex.column();
        parity = lex.identifier();
        if (parity != "even" && parity != "odd") {
          lex.fail_at(column, "parity must be 'even' or 'odd'");
        }
        have_parity = true;
      } else {
        lex.fail_at(key_column, "unknown key '" + key + "' for " + kind + " mode");
      }
      if (lex.at_end()) {
        break;
      }
      lex.expect(',');
    }
    Mode mode;
    if (kind == "poly") {
      if (!have_degree) {
        lex.fail_at(item_column, "poly mode needs d=<int>");
      }
      mode = PolynomialMode{static_cast<int>(degree), static_cast<int>(index)};
    } else {
      if (!have_eigen || !have_parity) {
        lex.fail_at(item_column, "exp mode needs j=<int> and parity=even|odd");
      }
      mode = ExponentialMode{static_cast<int>(eigen_index), parity == "even" ? Parity::even : Parity::odd};
    }
    for (const Term& existing : terms) {
      if (existing.mode == mode) {
        lex.fail_at(item_column, "mode listed twice");
      }
    }
    terms.push_back(Term{coefficient, mode});
    if (end == descriptor.size()) {
      break;
    }
    start = end + 1;
  }
  return HarmonicCombination(std::move(terms));
}

}  // namespace shrinker

namespace shrinker {

IdentityEntry check_harmonicity(const RigidShrinker& model, const HarmonicCombination& u, std::size_t points,
                                std::uint64_t seed) {
  validate_for(model, u);
  const int k = model.euclidean_rank();
  std::vector<Term> polynomial_terms;
  for (const Term& t : u.terms()) {
    if (std::holds_alternative<PolynomialMode>(t.mode)) {
      polynomial_terms.push_back(t);
    }
  }
  const HarmonicCombination p(std::move(polynomial_terms));
  std::mt19937_64 generator(seed);
  const auto uniform = [&generator] { return static_cast<double>(generator() >> 11) * 0x1.0p-53; };

  // floor at the sup of |u| on |y| ≤ 2 so roundoff near a nodal set is not
  // mistaken for a nonzero Laplacian
  const double magnitude = p.is_zero() ? 0.0 : sup_on_sublevel(p, model, 1.0);
  double worst = 0.0;
  Point point;
  point.y.assign(static_cast<std::size_t>(k), 0.0);
  for (std::size_t n = 0; n < points; ++n) {
    double r2 = 0.0;
    for (double& c : point.y) {
      c = 4.0 * uniform() - 2.0;
      r2 += c * c;
    }
    if (r2 > 4.0) {
      --n;
      continue;
    }
    const double radius = std::max(1.0, std::sqrt(r2));
    const double step = 1e-3 * radius;
    const double centre = evaluate(model, p, point);
    double laplacian = 0.0;
    double scale = (std::abs(centre) + magnitude) / (radius * radius);
    for (std::size_t i = 0; i < point.y.size(); ++i) {
      const double y0 = point.y[i];
      const auto at = [&](double offset) {
        point.y[i] = y0 + offset;
        const double v = evaluate(model, p, point);
        point.y[i] = y0;
        return v;
      };
      const double second =
          (-at(2 * step) + 16.0 * at(step) - 30.0 * centre + 16.0 * at(-step) - at(-2 * step)) / (12.0 * step * step);
      laplacian += second;
      scale += std::abs(second);
    }
    if (scale > 0.0) {
      worst = std::max(worst, std::abs(laplacian) / scale);
    }
  }
  IdentityEntry entry = judged("harmonic.laplacian",
                               {{"model", model.to_json()}, {"u", u.to_descriptor()}, {"points", points}}, worst,
                               1e-6, "finite_difference");
  entry.seed = seed;
  return entry;
}

}  // namespace shrinker
