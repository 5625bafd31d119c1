#pragma once
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "speclab/grid.hpp"
#include "speclab/potential.hpp"
#include "speclab/rng.hpp"
#include "speclab/tridiag.hpp"

namespace speclab {

// h-weighted discrete inner product <f,g> = h * sum f_i g_i.
inline double dot_h(double h, const std::vector<double>& a, const std::vector<double>& b) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(acc * h);
}

inline double norm_h(double h, const std::vector<double>& a) {
  return std::sqrt(dot_h(h, a, a));
}

// Modes of -d2/dx2 + V strictly below a spectral cutoff, orthonormal in the
// h-weighted inner product.
struct SpectralSubspace {
  Grid1D grid;
  double lambda_cut = 0.0;
  std::vector<double> lambdas;             // ascending
  std::vector<std::vector<double>> vecs;   // vecs[k][i], h-normalized

  int m() const { return static_cast<int>(lambdas.size()); }
};

struct SubspaceDiagnostics {
  double max_residual_rel = 0.0;      // ||T v - lambda v||_h / max(1, lambda)
  double max_ortho_defect = 0.0;      // max |<v_j,v_k>_h - delta_jk|
  bool sturm_match = false;           // m equals the independent Sturm count
};

namespace detail {

// k-th eigenvalue (0-based) by Sturm bisection inside [lo, hi] where
// count(lo) <= k < count(hi).
inline double bisect_eigenvalue(const TridiagonalOperator& op, int k, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted in this precision
    if (sturm_count(op, mid) <= k)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(mid)) + 1e-300) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// Eigenpairs below the cutoff: Sturm bisection for values, shifted inverse
// iteration for vectors, re-orthogonalization inside near-degenerate
// clusters, then one modified Gram-Schmidt sweep over the whole set.
inline SpectralSubspace eigenpairs_below(const TridiagonalOperator& op, const Grid1D& g,
                                         double lambda, std::uint64_t seed = 12345) {
  if (op.size() != g.n) throw std::invalid_argument("eigenpairs_below: operator/grid size mismatch");
  SpectralSubspace sub;
  sub.grid = g;
  sub.lambda_cut = lambda;

  const int m = sturm_count(op, lambda);
  if (m == 0) return sub;
  const auto [glo, ghi] = spectrum_bounds(op);
  (void)ghi;

  // values
  sub.lambdas.resize(static_cast<std::size_t>(m));
  double lo = glo;
  for (int k = 0; k < m; ++k) {
    const double lk = detail::bisect_eigenvalue(op, k, lo, lambda);
    sub.lambdas[static_cast<std::size_t>(k)] = lk;
    lo = std::max(glo, lk - 1e-8 * std::max(1.0, std::abs(lk)));
  }

  // vectors
  const int n = op.size();
  sub.vecs.assign(static_cast<std::size_t>(m), std::vector<double>());
  const double cluster_tol = 1e-6;
  TridiagLU lu;
  std::vector<double> b(static_cast<std::size_t>(n));
  for (int k = 0; k < m; ++k) {
    const double lk = sub.lambdas[static_cast<std::size_t>(k)];
    int cluster_begin = k;
    while (cluster_begin > 0 &&
           lk - sub.lambdas[static_cast<std::size_t>(cluster_begin - 1)] <
               cluster_tol * (1.0 + std::abs(lk)))
      --cluster_begin;

    Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k + 1));
    for (auto& bi : b) bi = rng.uniform(-1.0, 1.0);
    const double shift = lk * (1.0 + 8.0 * std::numeric_limits<double>::epsilon()) +
                         8.0 * std::numeric_limits<double>::min();
    lu.factor(op, shift);
    for (int it = 0; it < 6; ++it) {
      lu.solve(b);
      for (int j = cluster_begin; j < k; ++j) {
        const double c = dot_h(g.h, sub.vecs[static_cast<std::size_t>(j)], b);
        const auto& vj = sub.vecs[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= c * vj[i];
      }
      const double nb = norm_h(g.h, b);
      if (!(nb > 0) || !std::isfinite(nb))
        throw std::runtime_error("eigenpairs_below: inverse iteration collapsed");
      for (auto& bi : b) bi /= nb;
      if (it >= 1 && nb > 1e10) break;  // solution grew enormously: converged
    }
    sub.vecs[static_cast<std::size_t>(k)] = b;
  }

  // global MGS sweep in ascending order, then a Rayleigh polish of each value
  std::vector<double> tv;
  for (int k = 0; k < m; ++k) {
    auto& vk = sub.vecs[static_cast<std::size_t>(k)];
    for (int j = 0; j < k; ++j) {
      const double c = dot_h(g.h, sub.vecs[static_cast<std::size_t>(j)], vk);
      const auto& vj = sub.vecs[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < vk.size(); ++i) vk[i] -= c * vj[i];
    }
    const double nv = norm_h(g.h, vk);
    if (!(nv > 0)) throw std::runtime_error("eigenpairs_below: degenerate basis after MGS");
    for (auto& vi : vk) vi /= nv;
    tridiag_apply(op, vk, tv);
    sub.lambdas[static_cast<std::size_t>(k)] = dot_h(g.h, vk, tv);
  }
  return sub;
}

inline SpectralSubspace eigenpairs_below(const Grid1D& g, const Potential& p,
                                         double lambda, std::uint64_t seed = 12345) {
  return eigenpairs_below(build_hamiltonian(g, p), g, lambda, seed);
}

inline SubspaceDiagnostics check_subspace(const TridiagonalOperator& op,
                                          const SpectralSubspace& sub) {
  SubspaceDiagnostics diag;
  const int m = sub.m();
  std::vector<double> tv;
  for (int k = 0; k < m; ++k) {
    const auto& vk = sub.vecs[static_cast<std::size_t>(k)];
    const double lk = sub.lambdas[static_cast<std::size_t>(k)];
    tridiag_apply(op, vk, tv, lk);
    diag.max_residual_rel = std::max(
        diag.max_residual_rel, norm_h(sub.grid.h, tv) / std::max(1.0, std::abs(lk)));
    for (int j = 0; j <= k; ++j) {
      const double g = dot_h(sub.grid.h, sub.vecs[static_cast<std::size_t>(j)], vk);
      diag.max_ortho_defect =
          std::max(diag.max_ortho_defect, std::abs(g - (j == k ? 1.0 : 0.0)));
    }
  }
  diag.sturm_match = (sturm_count(op, sub.lambda_cut) == m);
  return diag;
}

// Mode count against the confinement-volume benchmark (lambda+1)*R_{lambda+1}
// with R the envelope-floor inverse; confined spectra keep this ratio bounded.
inline double counting_ratio(const TridiagonalOperator& op, const Potential& p, double lambda) {
  const double n_lambda = static_cast<double>(sturm_count(op, lambda));
  const double r = phi_inverse(p, lambda + 1.0);
  return n_lambda / ((lambda + 1.0) * std::max(r, 1e-300));
}

}  // namespace speclab
