#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace speclab {

// Dense symmetric eigendecomposition in extended precision, for the small
// sensor Gram matrices (m up to a few hundred). Householder reduction to
// tridiagonal form with accumulated transforms, then implicit-shift QL.
// Eigenvalues ascend; column j of `vectors` is the eigenvector for values[j].
struct SymEigenResult {
  std::vector<long double> values;
  std::vector<long double> vectors;  // row-major m x m, vectors[i*m+j]
  std::size_t m = 0;

  long double vec(std::size_t i, std::size_t j) const { return vectors[i * m + j]; }
};

inline SymEigenResult sym_eigen(std::vector<long double> a, std::size_t n) {
  if (a.size() != n * n || n == 0) throw std::invalid_argument("sym_eigen: bad dimensions");
  std::vector<long double> d(n, 0.0L), e(n, 0.0L);
  auto z = [&](std::size_t i, std::size_t j) -> long double& { return a[i * n + j]; };

  // Householder reduction (EISPACK tred2, zero-based).
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    long double h = 0.0L, scale = 0.0L;
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(z(i, k));
      if (scale == 0.0L) {
        e[i] = z(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        long double f = z(i, l);
        long double g = (f >= 0.0L) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0L;
        for (std::size_t j = 0; j <= l; ++j) {
          z(j, i) = z(i, j) / h;
          g = 0.0L;
          for (std::size_t k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        const long double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = z(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0L;
  e[0] = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] != 0.0L) {
      for (std::size_t j = 0; j < i; ++j) {
        long double g = 0.0L;
        for (std::size_t k = 0; k < i; ++k) g += z(i, k) * z(k, j);
        for (std::size_t k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
      }
    }
    d[i] = z(i, i);
    z(i, i) = 1.0L;
    for (std::size_t j = 0; j < i; ++j) z(j, i) = z(i, j) = 0.0L;
  }

  // Implicit-shift QL (EISPACK tql2, zero-based), rotating z along.
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0L;
  const long double eps = 1e-19L;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const long double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw std::runtime_error("sym_eigen: QL failed to converge");
        long double g = (d[l + 1] - d[l]) / (2.0L * e[l]);
        long double r = std::hypot(g, 1.0L);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        long double s = 1.0L, c = 1.0L, p = 0.0L;
        std::size_t i = m;  // loop i = m-1 down to l
        bool underflow = false;
        while (i-- > l) {
          long double f = s * e[i];
          const long double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0L) {
            d[i + 1] -= p;
            e[m] = 0.0L;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0L * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t k = 0; k < n; ++k) {
            f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0L;
      }
    } while (m != l);
  }

  // Sort ascending, permuting eigenvector columns.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  SymEigenResult out;
  out.m = n;
  out.values.resize(n);
  out.vectors.assign(n * n, 0.0L);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + j] = z(i, order[j]);
  }
  return out;
}

}  // namespace speclab
