#include "shrinker/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "shrinker/error.hpp"
#include "shrinker/special_functions.hpp"

namespace shrinker {
namespace {

// 15-point Kronrod abscissae (positive half, descending) and weights; the odd
// entries are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double abs_value;  // ∫|f| on the panel, used for the round-off floor
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(fc) * kKronrodWeights[7];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kKronrodWeights[i] * (f1 + f2);
    abs_sum += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) {
      gauss += kGaussWeights[i / 2] * (f1 + f2);
    }
  }
  kronrod *= half;
  gauss *= half;
  abs_sum *= std::abs(half);
  return Panel{a, b, kronrod, std::abs(kronrod - gauss), abs_sum};
}

double roundoff_floor(double abs_integral) {
  return 50.0 * std::numeric_limits<double>::epsilon() * abs_integral;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options, std::span<const double> breakpoints) {
  if (!(options.tol_rel > 0.0) || !(options.tol_abs > 0.0)) {
    throw DomainError("integrate: tolerances must be positive");
  }
  if (!(a < b)) {
    if (a == b) {
      return {};
    }
    throw DomainError("integrate: lower limit exceeds upper limit");
  }

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) {
      cuts.push_back(p);
    }
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  const auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(options.max_panels) + 1);
  long evaluations = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    heap.push_back(gauss_kronrod(f, cuts[i], cuts[i + 1]));
    evaluations += 15;
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;
  // Running sums drift; resum from the panels periodically and at the end.
  const auto resum = [&] {
    value = error = abs_value = 0.0;
    for (const Panel& p : heap) {
      value += p.value;
      error += p.error;
      abs_value += p.abs_value;
    }
  };

  resum();
  while (error > std::max({options.tol_rel * std::abs(value), options.tol_abs, roundoff_floor(abs_value)})) {
    if (static_cast<int>(heap.size()) >= options.max_panels) {
      throw QuadratureError("integrate: panel budget exhausted before reaching tolerance", value,
                            error);
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
    if (heap.size() % 256 == 0) {
      resum();
    }
  }
  resum();
  return QuadratureResult{value, std::max(error, roundoff_floor(abs_value)), evaluations};
}

QuadratureResult integrate_radial(const RadialIntegrand& g, const QuadratureOptions& options) {
  if (!(g.t > 0.0)) {
    throw DomainError("integrate_radial: t must be positive");
  }
  if (!(g.power >= 0.0) || !(g.weight_exponent >= 0.0)) {
    throw DomainError("integrate_radial: power and weight exponent must be nonnegative");
  }
  const double rho = 2.0 * std::sqrt(g.t);
  const double scale = std::pow(rho, g.power + 1.0) * std::pow(g.t, g.weight_exponent);
  const auto integrand = [&](double s) {
    double value = std::pow(s, g.power);
    if (g.weight_exponent != 0.0) {
      value *= std::pow((1.0 - s) * (1.0 + s), g.weight_exponent);
    }
    if (g.profile) {
      value *= g.profile(rho * s);
    }
    return value;
  };
  QuadratureOptions scaled = options;
  scaled.tol_abs = options.tol_abs / scale;
  static constexpr std::array<double, 3> kInitialCuts = {0.5, 0.75, 0.875};
  QuadratureResult result = integrate(integrand, 0.0, 1.0, scaled, kInitialCuts);
  result.value *= scale;
  result.error_estimate *= scale;
  return result;
}

QuadratureResult ball_monte_carlo(const std::function<double(std::span<const double>)>& fiber_integrand,
                                  double alpha, int k, double t, const MonteCarloOptions& options) {
  if (k < 1 || k > 3) {
    throw DomainError("ball_monte_carlo: only Euclidean rank 1, 2 or 3 is supported");
  }
  if (!(t > 0.0)) {
    throw DomainError("ball_monte_carlo: t must be positive");
  }
  if (!(alpha >= 0.0)) {
    throw DomainError("ball_monte_carlo: alpha must be nonnegative");
  }
  if (options.samples < 10000) {
    throw DomainError("ball_monte_carlo: at least 1e4 samples are required");
  }

  std::mt19937_64 generator(options.seed);
  // 53 random mantissa bits; fixed mapping keeps runs reproducible across
  // standard libraries, unlike std::uniform_real_distribution.
  const auto uniform = [&generator] {
    return static_cast<double>(generator() >> 11) * 0x1.0p-53;
  };

  const double rho = 2.0 * std::sqrt(t);
  std::array<double, 3> y{};
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t accepted = 0;
  long evaluations = 0;
  while (accepted < options.samples) {
    double r2 = 0.0;
    for (int i = 0; i < k; ++i) {
      y[static_cast<std::size_t>(i)] = rho * (2.0 * uniform() - 1.0);
      r2 += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    }
    if (r2 > rho * rho) {
      continue;
    }
    const double weight = std::pow(std::max(t - 0.25 * r2, 0.0), alpha);
    const double sample = fiber_integrand(std::span<const double>(y.data(), static_cast<std::size_t>(k))) * weight;
    ++evaluations;
    ++accepted;
    const double delta = sample - mean;
    mean += delta / static_cast<double>(accepted);
    m2 += delta * (sample - mean);
  }
  const double volume = unit_ball_volume(k) * std::pow(rho, k);
  const double variance = m2 / static_cast<double>(accepted - 1);
  return QuadratureResult{volume * mean,
                          volume * std::sqrt(variance / static_cast<double>(accepted)), evaluations};
}

}  // namespace shrinker
