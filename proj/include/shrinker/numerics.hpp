#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace shrinker {

/// `count` log-spaced points from t_min to t_max inclusive.
std::vector<double> log_grid(double t_min, double t_max, std::size_t count);

/// Log-spaced grid with the given density; the point count is
/// round(points_per_decade · decades), at least 2.
std::vector<double> log_grid_per_decade(double t_min, double t_max, double points_per_decade);

std::vector<double> linear_grid(double t_min, double t_max, std::size_t count);

/// Throws DomainError unless the grid is nonempty, positive and strictly increasing.
void validate_grid(std::span<const double> grid, std::size_t min_points = 1);

/// dF/dt at t > 0 from central differences in x = ln t with steps δ, δ/2, δ/4
/// combined by two Richardson levels (error O(δ^6)).
double log_stencil_derivative(const std::function<double(double)>& F, double t, double rel_step = 1e-3);

/// Least-squares slope of ln(values) against ln(ts).
double loglog_slope(std::span<const double> ts, std::span<const double> values);

double relative_difference(double a, double b);

}  // namespace shrinker
