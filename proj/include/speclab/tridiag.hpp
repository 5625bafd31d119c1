#pragma once
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "speclab/grid.hpp"
#include "speclab/potential.hpp"

namespace speclab {

// Symmetric tridiagonal discretization of -d2/dx2 + V with homogeneous
// boundary values one step outside the grid: d_i = 2/h^2 + V(x_i) on every
// node, constant off-diagonal e = -1/h^2.
struct TridiagonalOperator {
  std::vector<double> d;
  double e = 0.0;
  double h = 0.0;

  int size() const { return static_cast<int>(d.size()); }
};

inline TridiagonalOperator build_hamiltonian(const Grid1D& g,
                                             const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != g.n)
    throw std::invalid_argument("build_hamiltonian: potential sample size mismatch");
  TridiagonalOperator op;
  op.h = g.h;
  op.e = -1.0 / (g.h * g.h);
  op.d.resize(v.size());
  const double two_h2 = 2.0 / (g.h * g.h);
  for (std::size_t i = 0; i < v.size(); ++i) op.d[i] = two_h2 + v[i];
  return op;
}

inline TridiagonalOperator build_hamiltonian(const Grid1D& g, const Potential& p) {
  return build_hamiltonian(g, sample_potential(p, g));
}

// y = (T - shift) * x
inline void tridiag_apply(const TridiagonalOperator& op, const std::vector<double>& x,
                          std::vector<double>& y, double shift = 0.0) {
  const int n = op.size();
  y.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    long double acc = (static_cast<long double>(op.d[static_cast<std::size_t>(i)]) - shift) *
                      x[static_cast<std::size_t>(i)];
    if (i > 0) acc += static_cast<long double>(op.e) * x[static_cast<std::size_t>(i - 1)];
    if (i + 1 < n) acc += static_cast<long double>(op.e) * x[static_cast<std::size_t>(i + 1)];
    y[static_cast<std::size_t>(i)] = static_cast<double>(acc);
  }
}

// Number of eigenvalues of T strictly below lambda, by the sign count of the
// LDL^T pivot recurrence q_i = (d_i - lambda) - e^2/q_{i-1}. Pivots are
// carried in long double and clamped away from zero so the recurrence can
// neither divide by zero nor overflow.
inline int sturm_count(const TridiagonalOperator& op, double lambda) {
  const long double e2 = static_cast<long double>(op.e) * op.e;
  const long double pivmin =
      std::numeric_limits<long double>::min() /
      std::numeric_limits<long double>::epsilon() * (1.0L + e2);
  int count = 0;
  long double q = 1.0L;
  for (std::size_t i = 0; i < op.d.size(); ++i) {
    q = (i == 0) ? (static_cast<long double>(op.d[i]) - lambda)
                 : (static_cast<long double>(op.d[i]) - lambda) - e2 / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0L) ++count;
  }
  return count;
}

// Gershgorin enclosure of the spectrum.
inline std::pair<double, double> spectrum_bounds(const TridiagonalOperator& op) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const double r = 2.0 * std::abs(op.e);
  for (double di : op.d) {
    lo = std::min(lo, di - r);
    hi = std::max(hi, di + r);
  }
  return {lo, hi};
}

// LU factorization of (T - shift) with partial pivoting; two superdiagonals
// appear under row swaps. Solves in place.
struct TridiagLU {
  std::vector<double> dl, dd, du, du2;
  std::vector<int> piv;

  void factor(const TridiagonalOperator& op, double shift) {
    const int n = op.size();
    dl.assign(static_cast<std::size_t>(n), op.e);
    dd.resize(static_cast<std::size_t>(n));
    du.assign(static_cast<std::size_t>(n), op.e);
    du2.assign(static_cast<std::size_t>(n), 0.0);
    piv.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) dd[static_cast<std::size_t>(i)] = op.d[static_cast<std::size_t>(i)] - shift;
    dl[0] = 0.0;
    du[static_cast<std::size_t>(n - 1)] = 0.0;

    const double tiny = std::numeric_limits<double>::min() * 4.0;
    for (int i = 0; i < n - 1; ++i) {
      const auto k = static_cast<std::size_t>(i);
      double sub = dl[k + 1];  // entry (i+1, i)
      if (std::abs(dd[k]) >= std::abs(sub)) {
        piv[k] = 0;
        if (std::abs(dd[k]) < tiny) dd[k] = (dd[k] < 0 ? -tiny : tiny);
        const double m = sub / dd[k];
        dl[k + 1] = m;  // store multiplier
        dd[k + 1] -= m * du[k];
        // du2 stays 0 in the unswapped branch
      } else {
        piv[k] = 1;
        const double m = dd[k] / sub;
        // swap rows i and i+1
        dd[k] = sub;
        const double t_du = du[k];
        du[k] = dd[k + 1];
        dd[k + 1] = t_du - m * dd[k + 1];
        du2[k] = du[k + 1];
        du[k + 1] = -m * du2[k];
        dl[k + 1] = m;
      }
    }
    const auto last = static_cast<std::size_t>(n - 1);
    if (std::abs(dd[last]) < tiny) dd[last] = (dd[last] < 0 ? -tiny : tiny);
  }

  void solve(std::vector<double>& b) const {
    const int n = static_cast<int>(dd.size());
    for (int i = 0; i < n - 1; ++i) {
      const auto k = static_cast<std::size_t>(i);
      if (piv[k] == 0) {
        b[k + 1] -= dl[k + 1] * b[k];
      } else {
        const double t = b[k];
        b[k] = b[k + 1];
        b[k + 1] = t - dl[k + 1] * b[k];
      }
    }
    for (int i = n - 1; i >= 0; --i) {
      const auto k = static_cast<std::size_t>(i);
      double acc = b[k];
      if (i + 1 < n) acc -= du[k] * b[k + 1];
      if (i + 2 < n) acc -= du2[k] * b[k + 2];
      b[k] = acc / dd[k];
    }
  }
};

}  // namespace speclab
