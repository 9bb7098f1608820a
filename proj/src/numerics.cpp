#include "shrinker/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "shrinker/error.hpp"

namespace shrinker {

std::vector<double> log_grid(double t_min, double t_max, std::size_t count) {
  if (!(t_min > 0.0) || !(t_max >= t_min)) {
    throw DomainError("log_grid: need 0 < t_min <= t_max");
  }
  if (count == 0) {
    throw DomainError("log_grid: empty grid requested");
  }
  if (count == 1) {
    return {t_min};
  }
  std::vector<double> grid(count);
  const double lo = std::log(t_min);
  const double step = (std::log(t_max) - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::exp(lo + step * static_cast<double>(i));
  }
  grid.front() = t_min;
  grid.back() = t_max;
  return grid;
}

std::vector<double> log_grid_per_decade(double t_min, double t_max, double points_per_decade) {
  if (!(points_per_decade > 0.0)) {
    throw DomainError("log_grid_per_decade: points per decade must be positive");
  }
  if (!(t_min > 0.0) || !(t_max > t_min)) {
    throw DomainError("log_grid_per_decade: need 0 < t_min < t_max");
  }
  const double decades = std::log10(t_max / t_min);
  const auto count = static_cast<std::size_t>(std::max(2.0, std::round(points_per_decade * decades)));
  return log_grid(t_min, t_max, count);
}

std::vector<double> linear_grid(double t_min, double t_max, std::size_t count) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || count == 0) {
    throw DomainError("linear_grid: need 0 < t_min <= t_max and count > 0");
  }
  if (count == 1) {
    return {t_min};
  }
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  grid.back() = t_max;
  return grid;
}

void validate_grid(std::span<const double> grid, std::size_t min_points) {
  if (grid.size() < std::max<std::size_t>(min_points, 1)) {
    throw DomainError("grid has " + std::to_string(grid.size()) + " point(s); at least " +
                      std::to_string(std::max<std::size_t>(min_points, 1)) + " required");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw DomainError("grid points must be positive and finite");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("grid must be strictly increasing");
    }
  }
}

double log_stencil_derivative(const std::function<double(double)>& F, double t, double rel_step) {
  if (!(t > 0.0) || !(rel_step > 0.0)) {
    throw DomainError("log_stencil_derivative: t and step must be positive");
  }
  // D(δ) ≈ t F'(t), the derivative in ln t.
  const auto central = [&](double delta) {
    return (F(t * std::exp(delta)) - F(t * std::exp(-delta))) / (2.0 * delta);
  };
  const double d1 = central(rel_step);
  const double d2 = central(0.5 * rel_step);
  const double d4 = central(0.25 * rel_step);
  const double r1 = (4.0 * d2 - d1) / 3.0;
  const double r2 = (4.0 * d4 - d2) / 3.0;
  return ((16.0 * r2 - r1) / 15.0) / t;
}

double loglog_slope(std::span<const double> ts, std::span<const double> values) {
  if (ts.size() != values.size() || ts.size() < 2) {
    throw DomainError("loglog_slope: need at least two paired samples");
  }
  const auto n = static_cast<double>(ts.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0) || !(values[i] > 0.0)) {
      throw DomainError("loglog_slope: samples must be positive");
    }
    mean_x += std::log(ts[i]);
    mean_y += std::log(values[i]);
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double dx = std::log(ts[i]) - mean_x;
    sxy += dx * (std::log(values[i]) - mean_y);
    sxx += dx * dx;
  }
  if (sxx == 0.0) {
    throw DomainError("loglog_slope: abscissae are all equal");
  }
  return sxy / sxx;
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) {
    return 0.0;
  }
  return std::abs(a - b) / scale;
}

}  // namespace shrinker
