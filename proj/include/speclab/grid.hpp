#pragma once
#include <cmath>
#include <stdexcept>
#include <vector>

namespace speclab {

// Uniform symmetric grid x_i = -L + i*h, i = 0..n-1, h = 2L/(n-1).
// n is kept odd so x=0 is always a node.
struct Grid1D {
  double L = 0.0;
  int n = 0;
  double h = 0.0;

  double x(int i) const { return -L + h * static_cast<double>(i); }

  std::vector<double> nodes() const {
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = x(i);
    return xs;
  }

  // index of the node closest to x (clamped to the grid)
  int nearest(double xq) const {
    double t = (xq + L) / h;
    int i = static_cast<int>(std::lround(t));
    if (i < 0) i = 0;
    if (i >= n) i = n - 1;
    return i;
  }
};

inline Grid1D make_grid(double L, int n) {
  if (!(L > 0.0)) throw std::invalid_argument("make_grid: L must be positive");
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("make_grid: n must be odd and at least 3");
  Grid1D g;
  g.L = L;
  g.n = n;
  g.h = 2.0 * L / static_cast<double>(n - 1);
  return g;
}

// smallest odd n >= 3 such that the resulting step 2L/(n-1) <= h_target
inline Grid1D make_grid_by_step(double L, double h_target) {
  if (!(h_target > 0.0))
    throw std::invalid_argument("make_grid_by_step: step must be positive");
  int half = static_cast<int>(std::ceil(L / h_target - 1e-12));
  if (half < 1) half = 1;
  return make_grid(L, 2 * half + 1);
}

}  // namespace speclab
