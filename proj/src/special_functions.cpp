#include "shrinker/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "shrinker/error.hpp"

namespace shrinker {
namespace {

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series A(x) for Γ(x) = sqrt(2π) t^{x-1/2} e^{-t} A(x), t = x + g - 1/2.
double lanczos_sum(double x) {
  const double z = x - 1.0;
  double sum = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    sum += kLanczosCoefficients[i] / (z + static_cast<double>(i));
  }
  return sum;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be positive");
  }
  if (x == 1.0 || x == 2.0) {
    return 0.0;
  }
  if (x < 0.5) {
    // Reflection keeps the Lanczos sum inside its accurate range.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double t = x + kLanczosG - 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(t) - t +
         std::log(lanczos_sum(x));
}

double gamma_function(double x) {
  if (!(x > 0.0)) {
    throw DomainError("gamma_function: argument must be positive");
  }
  if (x >= 171.0) {
    throw DomainError("gamma_function: overflow for x >= 171");
  }
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_function(1.0 - x));
  }
  const double t = x + kLanczosG - 0.5;
  // Split the power so t^{x-1/2} e^{-t} does not overflow before x ~ 171.
  const double half_power = std::pow(t, 0.5 * (x - 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) *
         lanczos_sum(x);
}

double beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("beta: arguments must be positive");
  }
  if (a < 0.5) {
    return beta(a + 1.0, b) * (a + b) / a;
  }
  if (b < 0.5) {
    return beta(a, b + 1.0) * (a + b) / b;
  }
  const double c = a + b;
  const double ta = a + kLanczosG - 0.5;
  const double tb = b + kLanczosG - 0.5;
  const double tc = c + kLanczosG - 0.5;
  // The exponentials combine to e^{-(g - 1/2)}; the powers are taken of ratios
  // below one so no intermediate overflows and cancellation stays small.
  double result = std::sqrt(2.0 * std::numbers::pi) * lanczos_sum(a) *
                  (lanczos_sum(b) / lanczos_sum(c));
  result *= std::pow(ta / tc, a - 0.5);
  result *= std::pow(tb / tc, b - 0.5);
  result /= std::sqrt(tc);
  result *= std::exp(-(kLanczosG - 0.5));
  return result;
}

double unit_ball_volume(int k) {
  if (k < 0) {
    throw DomainError("unit_ball_volume: negative dimension");
  }
  // V_k = 2π/k · V_{k-2}
  double volume = (k % 2 == 0) ? 1.0 : 2.0;
  for (int j = (k % 2 == 0) ? 2 : 3; j <= k; j += 2) {
    volume *= 2.0 * std::numbers::pi / static_cast<double>(j);
  }
  return volume;
}

double unit_sphere_area(int k) {
  if (k < 1) {
    throw DomainError("unit_sphere_area: ambient dimension must be at least 1");
  }
  return static_cast<double>(k) * unit_ball_volume(k);
}

unsigned long long binomial(long long n, long long r) {
  if (n < 0 || r < 0 || r > n) {
    return 0;
  }
  r = std::min(r, n - r);
  unsigned long long result = 1;
  for (long long i = 1; i <= r; ++i) {
    // exact at every step: result * (n - r + i) is divisible by i
    result = result * static_cast<unsigned long long>(n - r + i) / static_cast<unsigned long long>(i);
  }
  return result;
}

}  // namespace shrinker
