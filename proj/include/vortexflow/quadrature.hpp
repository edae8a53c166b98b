#pragma once

#include <functional>
#include <span>
#include <vector>

namespace vortexflow::quad {

struct SimpsonOptions {
  double rel_tol = 1e-10;
  // Absolute floor, used when the integral itself is close to zero.
  double abs_floor = 1e-300;
  int max_depth = 50;
};

// Adaptive Simpson with Richardson correction on [lo, hi]. The acceptance
// tolerance is rel_tol times a coarse estimate of the integral of |fn|.
// Throws NumericalToleranceError when max_depth is reached without meeting
// the local tolerance.
double adaptive_simpson(const std::function<double(double)>& fn, double lo, double hi,
                        const SimpsonOptions& opts = {});

// Cumulative integral of samples on a uniform grid with spacing h:
// out[i] = integral from node 0 to node i. Uses the local cubic rule
// h/24 (-y[i-1] + 13 y[i] + 13 y[i+1] - y[i+2]) on interior cells and the
// one-sided cubic rule on the two boundary cells, so the result is O(h^4).
// Requires at least 4 samples.
void cumulative_integral(std::span<const double> y, double h, std::span<double> out);

std::vector<double> cumulative_integral(std::span<const double> y, double h);

}  // namespace vortexflow::quad
