#pragma once
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace speclab {

// Ordinary least-squares line y = slope*x + intercept with coefficient of
// determination.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need two or more paired samples");
  const std::size_t n = x.size();
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const long double mx = sx / n, my = sy / n;
  long double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = static_cast<double>(sxy / sxx);
  f.intercept = static_cast<double>(my - (sxy / sxx) * mx);
  if (syy == 0) {
    f.r2 = 1.0;  // exactly flat data, perfectly reproduced by slope 0
  } else {
    const long double ss_res = syy - sxy * sxy / sxx;
    f.r2 = static_cast<double>(1.0L - ss_res / syy);
  }
  return f;
}

}  // namespace speclab
