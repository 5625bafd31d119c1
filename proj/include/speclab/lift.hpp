#pragma once
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "speclab/eigensolver.hpp"

namespace speclab {

// Even 2D extension u(x,y) = sum_k e_k cosh(sqrt(lambda_k) y) phi_k(x) of a
// subspace member, solving -Laplace(u) + V u = 0 with zero normal trace on
// the line y = 0. Slices are evaluated under a per-slice log scale so the
// field stays representable for arbitrarily tall boxes.
struct LiftedField {
  const SpectralSubspace* sub = nullptr;
  std::vector<double> e;
  double Y = 1.0;
  int ny = 3;

  double dy() const { return 2.0 * Y / (ny - 1); }
  double y(int j) const { return -Y + j * dy(); }
};

inline LiftedField make_lift(const SpectralSubspace& sub, std::vector<double> e, double Y,
                             int ny) {
  if (e.size() != static_cast<std::size_t>(sub.m()))
    throw std::invalid_argument("make_lift: coefficient count != m");
  if (!(Y > 0)) throw std::invalid_argument("make_lift: Y must be positive");
  if (ny < 3 || ny % 2 == 0) throw std::invalid_argument("make_lift: ny must be odd and >= 3");
  LiftedField f;
  f.sub = &sub;
  f.e = std::move(e);
  f.Y = Y;
  f.ny = ny;
  return f;
}

// log(cosh(z)), stable for any magnitude.
inline double log_cosh(double z) {
  const double a = std::fabs(z);
  return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094172321214582;
}

// One horizontal slice: u(x_i, y) = exp(log_scale) * vals[i].
struct ScaledSlice {
  std::vector<double> vals;
  double log_scale = 0.0;
};

inline ScaledSlice slice_eval(const LiftedField& f, double y) {
  const SpectralSubspace& sub = *f.sub;
  const std::size_t m = sub.m();
  const std::size_t n = sub.grid.nodes().size();
  ScaledSlice s;
  s.vals.assign(n, 0.0);
  double A = -std::numeric_limits<double>::infinity();
  std::vector<double> lc(m, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < m; ++k) {
    if (f.e[k] == 0.0) continue;
    lc[k] = std::log(std::fabs(f.e[k])) + log_cosh(std::sqrt(std::max(0.0, sub.lambdas[k])) * y);
    A = std::max(A, lc[k]);
  }
  if (!std::isfinite(A)) return s;  // all-zero coefficients
  s.log_scale = A;
  for (std::size_t k = 0; k < m; ++k) {
    if (f.e[k] == 0.0) continue;
    const double c = std::copysign(std::exp(lc[k] - A), f.e[k]);
    if (c == 0.0) continue;
    const std::vector<double>& phi = sub.vecs[k];
    for (std::size_t i = 0; i < n; ++i) s.vals[i] += c * phi[i];
  }
  return s;
}

// Squared slice norm by the mode sum, in extended precision (exact discrete
// Parseval: the eigenvectors are orthonormal in the h-weighted product).
inline long double parseval_slice_ld(const LiftedField& f, double y) {
  const SpectralSubspace& sub = *f.sub;
  long double total = 0.0L;
  for (std::size_t k = 0; k < static_cast<std::size_t>(sub.m()); ++k) {
    if (f.e[k] == 0.0) continue;
    const long double c =
        static_cast<long double>(f.e[k]) *
        std::cosh(static_cast<long double>(std::sqrt(std::max(0.0, sub.lambdas[k]))) *
                  static_cast<long double>(y));
    total += c * c;
  }
  return total;
}

struct SliceCheck {
  double log_measured = 0.0;   // log of h * sum_i u(x_i,y)^2
  double log_parseval = 0.0;   // log of sum_k e_k^2 cosh^2(sqrt(lambda_k) y)
  double rel_gap = 0.0;
};

inline SliceCheck slice_parseval_check(const LiftedField& f, double y) {
  const ScaledSlice s = slice_eval(f, y);
  long double q = 0.0L;
  for (double v : s.vals) q += static_cast<long double>(v) * static_cast<long double>(v);
  q *= static_cast<long double>(f.sub->grid.h);
  const long double p = parseval_slice_ld(f, y);
  SliceCheck c;
  if (p == 0.0L && q == 0.0L) return c;
  c.log_measured = static_cast<double>(std::log(q)) + 2.0 * s.log_scale;
  c.log_parseval = static_cast<double>(std::log(p));
  c.rel_gap = std::fabs(std::expm1(c.log_measured - c.log_parseval));
  return c;
}

// Largest pairwise mismatch between slices at y and -y (structurally zero:
// cosh is even) and between the y=0 slice and the direct mode combination.
struct SymmetryReport {
  double even_gap = 0.0;
  double trace_gap = 0.0;
  double neumann_gap = 0.0;  // centered d/dy at y=0, zero by evenness
};

inline SymmetryReport symmetry_check(const LiftedField& f) {
  SymmetryReport rep;
  const std::size_t n = f.sub->grid.nodes().size();
  for (int j = 0; j < f.ny / 2; ++j) {
    const ScaledSlice a = slice_eval(f, f.y(j));
    const ScaledSlice b = slice_eval(f, -f.y(j));
    for (std::size_t i = 0; i < n; ++i)
      rep.even_gap = std::max(rep.even_gap, std::fabs(a.vals[i] - b.vals[i]));
  }
  const ScaledSlice mid = slice_eval(f, 0.0);
  const double scale0 = std::exp(mid.log_scale);
  std::vector<double> direct(n, 0.0);
  for (std::size_t k = 0; k < static_cast<std::size_t>(f.sub->m()); ++k)
    for (std::size_t i = 0; i < n; ++i) direct[i] += f.e[k] * f.sub->vecs[k][i];
  for (std::size_t i = 0; i < n; ++i)
    rep.trace_gap = std::max(rep.trace_gap, std::fabs(mid.vals[i] * scale0 - direct[i]));
  const ScaledSlice up = slice_eval(f, f.dy());
  const ScaledSlice dn = slice_eval(f, -f.dy());
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = std::fabs(up.vals[i] - dn.vals[i]);
    if (diff == 0.0) continue;  // structural evenness; avoid 0 * inf at huge scales
    rep.neumann_gap =
        std::max(rep.neumann_gap, diff * std::exp(up.log_scale) / (2.0 * f.dy()));
  }
  return rep;
}

// Max over interior nodes of |discrete Laplacian - V u| / scale with
// scale = max(1, |u|*(lambda_max + max V)). Rows are evaluated under the
// middle row's log scale so the stencil is formed from commensurate numbers.
inline double pde_residual(const LiftedField& f, const std::vector<double>& vpot) {
  const SpectralSubspace& sub = *f.sub;
  const std::size_t n = sub.grid.nodes().size();
  if (vpot.size() != n) throw std::invalid_argument("pde_residual: potential/grid mismatch");
  const double h = sub.grid.h, dyv = f.dy();
  double vmax = 0.0;
  for (double v : vpot) vmax = std::max(vmax, std::fabs(v));
  const double lmax = sub.lambdas.empty() ? 0.0 : sub.lambdas.back();
  double worst = 0.0;
  ScaledSlice below = slice_eval(f, f.y(0));
  ScaledSlice mid = slice_eval(f, f.y(1));
  for (int j = 1; j + 1 < f.ny; ++j) {
    ScaledSlice above = slice_eval(f, f.y(j + 1));
    const double cb = std::exp(below.log_scale - mid.log_scale);
    const double ca = std::exp(above.log_scale - mid.log_scale);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double u0 = mid.vals[i];
      const double rx = (mid.vals[i - 1] - 2.0 * u0 + mid.vals[i + 1]) / (h * h);
      const double ry = (cb * below.vals[i] - 2.0 * u0 + ca * above.vals[i]) / (dyv * dyv);
      const double res = -rx - ry + vpot[i] * u0;  // scaled by exp(mid.log_scale)
      if (res == 0.0) continue;
      const double mag = std::fabs(u0) * (lmax + vmax);
      double ratio;
      if (mid.log_scale + std::log(std::max(mag, 1e-300)) >= 0.0)
        ratio = std::fabs(res) / mag;
      else
        ratio = std::fabs(res) * std::exp(std::min(mid.log_scale, 700.0));
      worst = std::max(worst, ratio);
    }
    below = std::move(mid);
    mid = std::move(above);
  }
  return worst;
}

// Same stencil check for an explicitly supplied matrix (rows = y levels),
// e.g. closed-form fields; plain double arithmetic.
inline double pde_residual_matrix(const std::vector<std::vector<double>>& u,
                                  const std::vector<double>& vpot, double h, double dyv,
                                  double lambda_max) {
  const std::size_t ny = u.size();
  if (ny < 3) throw std::invalid_argument("pde_residual_matrix: need >= 3 rows");
  const std::size_t n = u.front().size();
  if (vpot.size() != n) throw std::invalid_argument("pde_residual_matrix: potential mismatch");
  double vmax = 0.0;
  for (double v : vpot) vmax = std::max(vmax, std::fabs(v));
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < ny; ++j)
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double u0 = u[j][i];
      const double rx = (u[j][i - 1] - 2.0 * u0 + u[j][i + 1]) / (h * h);
      const double ry = (u[j - 1][i] - 2.0 * u0 + u[j + 1][i]) / (dyv * dyv);
      const double res = -rx - ry + vpot[i] * u0;
      const double scale = std::max(1.0, std::fabs(u0) * (lambda_max + vmax));
      worst = std::max(worst, std::fabs(res) / scale);
    }
  return worst;
}

// Closed-form per-mode slab integral: int_{y1}^{y2} cosh^2(sqrt(l) y) dy.
inline long double cosh_sq_integral(double lambda, double y1, double y2) {
  const long double r = std::sqrt(static_cast<long double>(std::max(lambda, 0.0)));
  if (r < 1e-150L) return static_cast<long double>(y2 - y1);
  auto F = [&](long double yv) { return yv / 2.0L + std::sinh(2.0L * r * yv) / (4.0L * r); };
  return F(static_cast<long double>(y2)) - F(static_cast<long double>(y1));
}

struct SlabReport {
  double log_closed = 0.0;      // log sum_k e_k^2 * closed-form integral
  double log_quad = 0.0;        // log of the y-quadrature of Parseval slices
  double quad_rel_gap = 0.0;    // |quad/closed - 1|
  double max_slice_gap = 0.0;   // worst measured-vs-Parseval slice gap
  double log_lower = 0.0;       // (a/2) sum e_k^2 bound, a = slab length
  double log_upper = 0.0;       // 16 a e^{4 sqrt(lmax) a} sum e_k^2 with a = len/4
  bool lower_ok = false;
  bool upper_ok = false;
};

// Verifies the Fubini identity integral(slab) u^2 = sum_k e_k^2 int cosh^2
// and the two slab bounds. The y-quadrature runs on exact Parseval slices
// (Simpson, refined until rounding dominates); a handful of full slices tie
// the measured field to the Parseval values.
inline SlabReport slab_identity(const LiftedField& f, double y1, double y2,
                                int quad_panels = 8192, int probe_slices = 17) {
  if (!(y2 > y1) || y1 < -f.Y - 1e-12 || y2 > f.Y + 1e-12)
    throw std::invalid_argument("slab_identity: slab must sit inside [-Y, Y]");
  const SpectralSubspace& sub = *f.sub;
  SlabReport rep;

  long double closed = 0.0L, coeff_sq = 0.0L;
  for (std::size_t k = 0; k < static_cast<std::size_t>(sub.m()); ++k) {
    const long double ek = f.e[k];
    closed += ek * ek * cosh_sq_integral(sub.lambdas[k], y1, y2);
    coeff_sq += ek * ek;
  }
  if (closed <= 0.0L) throw std::invalid_argument("slab_identity: zero field");

  const int np = quad_panels + (quad_panels % 2);  // Simpson needs even panels
  const long double step = (static_cast<long double>(y2) - y1) / np;
  long double quad = 0.0L;
  for (int q = 0; q <= np; ++q) {
    const double yq = static_cast<double>(y1 + step * q);
    const long double w = (q == 0 || q == np) ? 1.0L : (q % 2 == 1 ? 4.0L : 2.0L);
    quad += w * parseval_slice_ld(f, yq);
  }
  quad *= step / 3.0L;

  for (int q = 0; q < probe_slices; ++q) {
    const double yq = y1 + (y2 - y1) * q / (probe_slices - 1.0);
    const SliceCheck sc = slice_parseval_check(f, yq);
    rep.max_slice_gap = std::max(rep.max_slice_gap, sc.rel_gap);
  }

  rep.log_closed = static_cast<double>(std::log(closed));
  rep.log_quad = static_cast<double>(std::log(quad));
  rep.quad_rel_gap = std::fabs(std::expm1(rep.log_quad - rep.log_closed));

  const double len = y2 - y1;
  const double lmax = sub.lambdas.empty() ? 0.0 : sub.lambdas.back();
  rep.log_lower = std::log(0.5 * len) + static_cast<double>(std::log(coeff_sq));
  const double a4 = len / 4.0;
  rep.log_upper = std::log(16.0 * a4) + 4.0 * std::sqrt(std::max(lmax, 0.0)) * a4 +
                  static_cast<double>(std::log(coeff_sq));
  rep.lower_ok = rep.log_closed >= rep.log_lower - 1e-12;
  rep.upper_ok = rep.log_closed <= rep.log_upper + 1e-12;
  return rep;
}

// Binary field dump: int64 nx, int64 ny, double h, double dy, then row-major
// values (rows = y levels). Only valid while the field fits linear doubles.
inline void write_field_dump(const std::string& path, const LiftedField& f) {
  const SpectralSubspace& sub = *f.sub;
  const double lmax = sub.lambdas.empty() ? 0.0 : sub.lambdas.back();
  if (std::sqrt(std::max(lmax, 0.0)) * f.Y > 300.0)
    throw std::domain_error("write_field_dump: field exceeds linear double range; reduce Y");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_field_dump: cannot open " + path);
  const std::int64_t nx = static_cast<std::int64_t>(sub.grid.nodes().size());
  const std::int64_t ny = f.ny;
  const double h = sub.grid.h, dyv = f.dy();
  out.write(reinterpret_cast<const char*>(&nx), sizeof nx);
  out.write(reinterpret_cast<const char*>(&ny), sizeof ny);
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  out.write(reinterpret_cast<const char*>(&dyv), sizeof dyv);
  std::vector<double> row(static_cast<std::size_t>(nx));
  for (int j = 0; j < f.ny; ++j) {
    const ScaledSlice s = slice_eval(f, f.y(j));
    const double scale = std::exp(s.log_scale);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = s.vals[i] * scale;
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
}

// Honest refinement protocol for the interior-equation residual: re-solve the
// eigenproblem at half the mesh width, align each refined mode's sign against
// the coarse one on the shared lattice, rebuild the lift with halved dy, and
// compare worst-case residuals. The x-part of the residual vanishes through
// the discrete eigen-identity, so the remainder is the y-discretization and
// the ratio must approach 4 (rate 2).
struct ResidualRate {
  double res_coarse = 0.0;
  double res_fine = 0.0;
  double rate = 0.0;  // log2(res_coarse / res_fine)
};

inline ResidualRate residual_rate_check(const Grid1D& g, const Potential& pot, double lambda,
                                        double Y, int ny, std::uint64_t seed = 12345) {
  const SpectralSubspace sub = eigenpairs_below(g, pot, lambda, seed);
  if (sub.m() == 0) throw std::domain_error("residual_rate_check: empty subspace");
  const Grid1D g2 = make_grid(g.L, 2 * g.n - 1);
  const SpectralSubspace sub2 = eigenpairs_below(g2, pot, lambda, seed);
  if (sub2.m() != sub.m())
    throw std::domain_error(
        "residual_rate_check: mode count changed under refinement; move the cutoff away from "
        "the eigenvalue at " +
        std::to_string(sub.lambdas.back()));

  const double amp = 1.0 / std::sqrt(static_cast<double>(sub.m()));
  std::vector<double> e(static_cast<std::size_t>(sub.m()), amp);
  std::vector<double> e2(e);
  for (int k = 0; k < sub.m(); ++k) {
    // Even-index fine nodes coincide with the coarse lattice.
    long double ip = 0.0L;
    const auto& vc = sub.vecs[static_cast<std::size_t>(k)];
    const auto& vf = sub2.vecs[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < vc.size(); ++i) ip += static_cast<long double>(vc[i]) * vf[2 * i];
    if (ip < 0.0L) e2[static_cast<std::size_t>(k)] = -e2[static_cast<std::size_t>(k)];
  }

  const LiftedField f1 = make_lift(sub, e, Y, ny);
  const LiftedField f2 = make_lift(sub2, e2, Y, 2 * ny - 1);
  ResidualRate rr;
  rr.res_coarse = pde_residual(f1, sample_potential(pot, g));
  rr.res_fine = pde_residual(f2, sample_potential(pot, g2));
  if (!(rr.res_fine > 0.0))
    throw std::domain_error("residual_rate_check: refined residual vanished; rate undefined");
  rr.rate = std::log2(rr.res_coarse / rr.res_fine);
  return rr;
}

}  // namespace speclab
