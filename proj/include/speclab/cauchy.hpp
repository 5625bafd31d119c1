#pragma once
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "speclab/eigensolver.hpp"
#include "speclab/fit.hpp"
#include "speclab/interval_set.hpp"
#include "speclab/potential.hpp"

namespace speclab {

// End-to-end propagation-of-smallness audit: a spectral-subspace lift is
// pushed through the unit-scale frame x = rho * xt, where rho grows with the
// spectral level so the rescaled potential stays admissible, and the chain
//   ||u||_{B2} <= exp(C (sqrt M + K)) ||u||_{L2(E)}^alpha ||u||_{B4}^{1-alpha}
// is solved for the smallest C. All norms are carried in long double and all
// constants are reported in the log domain; nothing here exponentiates C.
struct CauchyParams {
  double c1 = 1.0;      // alpha = 1 / (c1 (1 + log(1/|E|)))
  double chat = 2.5;    // frame radius factor: rho = chat * lambda^{1/beta1}
  int disk_grid = 481;  // quadrature lattice across [-4, 4] (odd)
  int e_samples = 4096; // midpoint samples per sensor interval at y = 0
};

struct CauchyReport {
  double lambda = 0.0;
  double rho = 0.0;
  double M = 0.0, K = 1.0;
  int modes = 0;
  double measure_e = 0.0;
  double alpha = 0.0;
  double log_b2 = 0.0, log_b4 = 0.0, log_e = 0.0;  // log L2 norms
  double c_mult = 0.0;      // log b2 - alpha log e - (1-alpha) log b4 = C (sqrt M + K)
  double c_ratio = 0.0;     // C itself: c_mult / (sqrt M + K)
  double c_recovery = 0.0;  // log(||u||_{B2} / ||u||_{L2(E)})
};

namespace detail {

// phi_k at an off-lattice point, linear interpolation, zero outside the box
// (admissible: the modes decay exponentially past their turning points).
inline double interp_mode(const Grid1D& g, const std::vector<double>& v, double X) {
  if (!(std::fabs(X) < g.L)) return 0.0;
  const double t = (X + g.L) / g.h;
  const std::size_t i0 = static_cast<std::size_t>(t);
  if (i0 + 1 >= v.size()) return v.back();
  const double f = t - static_cast<double>(i0);
  return (1.0 - f) * v[i0] + f * v[i0 + 1];
}

}  // namespace detail

// One chain evaluation for the lift u(xt, yt) = sum_k e_k cosh(sqrt(lambda_k)
// rho yt) phi_k(rho xt), over modes with lambda_k <= lambda and e_k != 0.
// E lives in the rescaled coordinate, inside (-1, 1).
inline CauchyReport cauchy_uniqueness_check(const SpectralSubspace& sub, const Potential& pot,
                                            double lambda, const std::vector<double>& e,
                                            const IntervalSet& E,
                                            const CauchyParams& params = {}) {
  if (!(lambda > 0.0)) throw std::domain_error("cauchy: spectral level must be positive");
  if (!(pot.beta1 > 0.0))
    throw std::domain_error("cauchy: potential '" + pot.name + "' carries no growth exponent");
  if (e.size() != static_cast<std::size_t>(sub.m()))
    throw std::invalid_argument("cauchy: coefficient count " + std::to_string(e.size()) +
                                " does not match subspace dimension " + std::to_string(sub.m()));
  if (E.empty() || !(E.measure() > 0.0))
    throw std::domain_error("cauchy: sensor set must have positive measure");
  for (const auto& [a, b] : E.intervals())
    if (a < -1.0 || b > 1.0)
      throw std::domain_error("cauchy: sensor set must sit inside (-1, 1), got edge at " +
                              std::to_string(a < -1.0 ? a : b));
  if (params.disk_grid < 41 || params.disk_grid % 2 == 0)
    throw std::invalid_argument("cauchy: disk_grid must be odd and at least 41");

  CauchyReport rep;
  rep.lambda = lambda;
  rep.rho = params.chat * std::pow(lambda, 1.0 / pot.beta1);
  rep.K = 1.0;

  // Rescaled potential envelope over the working square.
  {
    double sup = 0.0;
    const int nv = 4001;
    for (int i = 0; i < nv; ++i) {
      const double xt = -5.0 + 10.0 * i / (nv - 1);
      sup = std::max(sup, rep.rho * rep.rho * pot.V(rep.rho * xt));
    }
    rep.M = std::max(1.0, sup);
  }

  // Active modes and the long-double range guard.
  std::vector<std::size_t> act;
  double lam_max = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k)
    if (e[k] != 0.0 && sub.lambdas[k] <= lambda * (1.0 + 1e-12)) {
      act.push_back(k);
      lam_max = std::max(lam_max, sub.lambdas[k]);
    }
  if (act.empty()) throw std::domain_error("cauchy: no active modes at or below the level");
  rep.modes = static_cast<int>(act.size());
  const double peak_exponent = std::sqrt(lam_max) * rep.rho * 4.0;
  if (peak_exponent > 5000.0)
    throw std::domain_error("cauchy: growth exponent " + std::to_string(peak_exponent) +
                            " exceeds the long-double budget; lower the spectral level");

  // Mode samples on the x quadrature lattice (shared by both disks).
  const int ng = params.disk_grid;
  const double dq = 8.0 / (ng - 1);
  std::vector<std::vector<double>> P(act.size(), std::vector<double>(static_cast<std::size_t>(ng)));
  for (std::size_t a = 0; a < act.size(); ++a)
    for (int i = 0; i < ng; ++i)
      P[a][static_cast<std::size_t>(i)] =
          detail::interp_mode(sub.grid, sub.vecs[act[a]], rep.rho * (-4.0 + dq * i));

  long double s2 = 0.0L, s4 = 0.0L;
  std::vector<long double> row(static_cast<std::size_t>(ng));
  for (int j = 0; j < ng; ++j) {
    const double yt = -4.0 + dq * j;
    std::fill(row.begin(), row.end(), 0.0L);
    for (std::size_t a = 0; a < act.size(); ++a) {
      const long double ck =
          static_cast<long double>(e[act[a]]) *
          std::cosh(std::sqrt(static_cast<long double>(sub.lambdas[act[a]])) *
                    static_cast<long double>(rep.rho) * static_cast<long double>(yt));
      for (int i = 0; i < ng; ++i)
        row[static_cast<std::size_t>(i)] += ck * P[a][static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < ng; ++i) {
      const double xt = -4.0 + dq * i;
      const double r2 = xt * xt + yt * yt;
      const long double u2 = row[static_cast<std::size_t>(i)] * row[static_cast<std::size_t>(i)];
      if (r2 < 16.0) s4 += u2;
      if (r2 < 4.0) s2 += u2;
    }
  }
  const long double cell = static_cast<long double>(dq) * static_cast<long double>(dq);
  if (!(s4 > 0.0L) || !(s2 > 0.0L))
    throw std::domain_error("cauchy: lift vanishes on the comparison disks");
  rep.log_b2 = static_cast<double>(0.5L * std::log(s2 * cell));
  rep.log_b4 = static_cast<double>(0.5L * std::log(s4 * cell));

  // Sensor-trace norm on the line y = 0 (cosh factor is 1 there).
  long double se = 0.0L;
  for (const auto& [a0, b0] : E.intervals()) {
    if (!(b0 > a0)) continue;
    const double step = (b0 - a0) / params.e_samples;
    long double part = 0.0L;
    for (int q = 0; q < params.e_samples; ++q) {
      const double xt = a0 + (q + 0.5) * step;
      long double v = 0.0L;
      for (std::size_t a = 0; a < act.size(); ++a)
        v += static_cast<long double>(e[act[a]]) *
             detail::interp_mode(sub.grid, sub.vecs[act[a]], rep.rho * xt);
      part += v * v;
    }
    se += part * static_cast<long double>(step);
  }
  if (!(se > 0.0L))
    throw std::domain_error("cauchy: lift trace vanishes on the sensor set");
  rep.log_e = static_cast<double>(0.5L * std::log(se));

  rep.measure_e = E.measure();
  rep.alpha = std::min(1.0, 1.0 / (params.c1 * (1.0 + std::log(1.0 / rep.measure_e))));
  rep.c_mult = rep.log_b2 - rep.alpha * rep.log_e - (1.0 - rep.alpha) * rep.log_b4;
  rep.c_ratio = rep.c_mult / (std::sqrt(rep.M) + rep.K);
  rep.c_recovery = rep.log_b2 - rep.log_e;
  return rep;
}

// Uniform coefficients on the modes at or below the level.
inline std::vector<double> uniform_coefficients(const SpectralSubspace& sub, double lambda) {
  std::vector<double> e(static_cast<std::size_t>(sub.m()), 0.0);
  int p = 0;
  for (std::size_t k = 0; k < e.size(); ++k)
    if (sub.lambdas[k] <= lambda * (1.0 + 1e-12)) ++p;
  if (p == 0) return e;
  for (std::size_t k = 0; k < e.size(); ++k)
    if (sub.lambdas[k] <= lambda * (1.0 + 1e-12)) e[k] = 1.0 / std::sqrt(static_cast<double>(p));
  return e;
}

// Odd-index coefficients: for an even potential these are the odd modes, so
// the trace at y = 0 has a simple zero at the sensor center and the shrinking
// sensor genuinely loses data.
inline std::vector<double> odd_coefficients(const SpectralSubspace& sub, double lambda) {
  std::vector<double> e(static_cast<std::size_t>(sub.m()), 0.0);
  int p = 0;
  for (std::size_t k = 1; k < e.size(); k += 2)
    if (sub.lambdas[k] <= lambda * (1.0 + 1e-12)) ++p;
  if (p == 0) return e;
  for (std::size_t k = 1; k < e.size(); k += 2)
    if (sub.lambdas[k] <= lambda * (1.0 + 1e-12)) e[k] = 1.0 / std::sqrt(static_cast<double>(p));
  return e;
}

// Chain constants across spectral levels at a fixed sensor set.
inline std::vector<CauchyReport> cauchy_sweep(const SpectralSubspace& sub, const Potential& pot,
                                              const std::vector<double>& lambdas,
                                              const IntervalSet& E,
                                              const CauchyParams& params = {}) {
  std::vector<CauchyReport> out;
  out.reserve(lambdas.size());
  for (double lam : lambdas)
    out.push_back(cauchy_uniqueness_check(sub, pot, lam, uniform_coefficients(sub, lam), E,
                                          params));
  return out;
}

// Chain constants at a fixed level while the sensor interval shrinks.
inline std::vector<CauchyReport> cauchy_shrink_sweep(const SpectralSubspace& sub,
                                                     const Potential& pot, double lambda,
                                                     const std::vector<double>& measures,
                                                     const CauchyParams& params = {}) {
  const std::vector<double> e = odd_coefficients(sub, lambda);
  std::vector<CauchyReport> out;
  out.reserve(measures.size());
  for (double m : measures) {
    if (!(m > 0.0) || m > 1.0)
      throw std::domain_error("cauchy: shrink sweep needs measures in (0, 1], got " +
                              std::to_string(m));
    out.push_back(
        cauchy_uniqueness_check(sub, pot, lambda, e, IntervalSet({{-0.5 * m, 0.5 * m}}), params));
  }
  return out;
}

// log C against log M across a level sweep (boundedness of the multiplier
// constant: the slope must stay small).
inline LineFit cauchy_ratio_fit(const std::vector<CauchyReport>& reports) {
  std::vector<double> xs, ys;
  for (const auto& r : reports) {
    xs.push_back(std::log(r.M));
    ys.push_back(std::log(r.c_ratio));
  }
  return fit_line(xs, ys);
}

// Recovery constant against log(1/|E|) across a shrink sweep.
inline LineFit cauchy_shrink_fit(const std::vector<CauchyReport>& reports) {
  std::vector<double> xs, ys;
  for (const auto& r : reports) {
    xs.push_back(std::log(1.0 / r.measure_e));
    ys.push_back(r.c_recovery);
  }
  return fit_line(xs, ys);
}

}  // namespace speclab
