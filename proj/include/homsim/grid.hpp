#pragma once

#include <vector>

namespace homsim {

// points >= 2 equally spaced nodes on [lo, hi], endpoints exact.
std::vector<double> uniform_grid(double lo, double hi, int points);

// Uniform grid plus every extra node strictly inside (lo, hi), sorted and
// deduplicated (nodes closer than 1e-12 collapse onto the earlier one).
std::vector<double> merged_grid(double lo, double hi, int points,
                                const std::vector<double>& extra);

// Composite trapezoidal rule on a sorted, possibly non-uniform grid.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace homsim
