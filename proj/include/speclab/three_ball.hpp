#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "speclab/fit.hpp"
#include "speclab/interval_set.hpp"
#include "speclab/rng.hpp"

namespace speclab {

// Holomorphic test function: polynomial with complex coefficients,
// h(z) = sum_j coeff[j] z^j, evaluated by Horner's rule.
struct DiskPolynomial {
  std::vector<std::complex<double>> coeff;

  std::complex<double> operator()(std::complex<double> z) const {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = coeff.size(); j-- > 0;) acc = acc * z + coeff[j];
    return acc;
  }
  int degree() const { return static_cast<int>(coeff.size()) - 1; }
};

// Gauss-Legendre rule on [-1, 1]: exact for polynomials of degree 2n-1.
struct GaussLegendre {
  std::vector<double> nodes, weights;
};

inline GaussLegendre make_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("make_gauss_legendre: need n >= 1");
  GaussLegendre gl;
  gl.nodes.resize(static_cast<std::size_t>(n));
  gl.weights.resize(static_cast<std::size_t>(n));
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    gl.nodes[static_cast<std::size_t>(i)] = -x;
    gl.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    gl.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.weights[static_cast<std::size_t>(n - 1 - i)] = gl.weights[static_cast<std::size_t>(i)];
  }
  return gl;
}

// sup over |z| = r by dense boundary sampling (maximum principle).
inline double disk_sup(const DiskPolynomial& h, double r, int samples = 4096) {
  double best = 0.0;
  const double pi = 3.14159265358979323846;
  for (int q = 0; q < samples; ++q) {
    const double th = 2.0 * pi * q / samples;
    best = std::max(best, std::abs(h(std::complex<double>(r * std::cos(th), r * std::sin(th)))));
  }
  return best;
}

// L2 norm of h over the interval union E, exact for the polynomial degree.
inline double e_norm(const DiskPolynomial& h, const IntervalSet& E, const GaussLegendre& gl) {
  long double total = 0.0L;
  for (const auto& [a, b] : E.intervals()) {
    const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
    if (!(rad > 0)) continue;
    long double part = 0.0L;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double x = mid + rad * gl.nodes[q];
      const double m = std::abs(h(std::complex<double>(x, 0.0)));
      part += static_cast<long double>(gl.weights[q]) * m * m;
    }
    total += part * rad;
  }
  return static_cast<double>(std::sqrt(total));
}

struct ThreeBallReport {
  double sup_b2 = 0.0;
  double sup_b4 = 0.0;
  double norm_e = 0.0;
  double measure_e = 0.0;
  double alpha_formula = 0.0;   // 1/(1 + log(1/|E|))
  double alpha_star = 0.0;      // largest alpha admitting C = 1
  double c_star = 0.0;          // smallest C at alpha_formula
  double c_recovery = 0.0;      // sup_b2 / norm_e (data-to-interior factor)
  double e0_measure = 0.0;      // mass of E where |h| stays below the level
  bool truncation_ok = false;   // |E0| >= (3/4)|E|
};

// Measure of {x in E : |h(x)| < level}, by dense sampling plus bisection
// refinement of each crossing.
inline double sublevel_measure(const DiskPolynomial& h, const IntervalSet& E, double level,
                               int samples_per_interval = 4096) {
  auto below = [&](double x) { return std::abs(h(std::complex<double>(x, 0.0))) < level; };
  double total = 0.0;
  for (const auto& [a, b] : E.intervals()) {
    if (!(b > a)) continue;
    const double step = (b - a) / samples_per_interval;
    double prev_x = a;
    bool prev_in = below(a);
    double seg_start = prev_in ? a : 0.0;
    for (int q = 1; q <= samples_per_interval; ++q) {
      const double x = (q == samples_per_interval) ? b : a + q * step;
      const bool in = below(x);
      if (in != prev_in) {
        double lo = prev_x, hi = x;
        for (int it = 0; it < 60; ++it) {
          const double mid2 = 0.5 * (lo + hi);
          (below(mid2) == prev_in ? lo : hi) = mid2;
        }
        const double crossing = 0.5 * (lo + hi);
        if (prev_in)
          total += crossing - seg_start;
        else
          seg_start = crossing;
        prev_in = in;
      }
      prev_x = x;
    }
    if (prev_in) total += b - seg_start;
  }
  return total;
}

inline ThreeBallReport three_ball_check(const DiskPolynomial& h, const IntervalSet& E) {
  if (E.empty() || !(E.measure() > 0.0))
    throw std::domain_error("three_ball_check: sensor set must have positive measure");
  for (const auto& [a, b] : E.intervals())
    if (a < -1.0 || b > 1.0)
      throw std::domain_error("three_ball_check: sensor set must sit inside (-1, 1)");
  bool nonzero = false;
  for (const auto& c : h.coeff)
    if (c != std::complex<double>(0.0, 0.0)) nonzero = true;
  if (!nonzero) throw std::domain_error("three_ball_check: test function is identically zero");

  ThreeBallReport rep;
  rep.measure_e = E.measure();
  rep.sup_b2 = disk_sup(h, 2.0);
  rep.sup_b4 = disk_sup(h, 4.0);
  const GaussLegendre gl = make_gauss_legendre(std::max(8, h.degree() + 1));
  rep.norm_e = e_norm(h, E, gl);
  if (!(rep.norm_e > 0.0))
    throw std::domain_error("three_ball_check: test function vanishes on the sensor set");

  rep.alpha_formula = 1.0 / (1.0 + std::log(1.0 / rep.measure_e));
  const double l42 = std::log(rep.sup_b4 / rep.sup_b2);
  const double l4e = std::log(rep.sup_b4 / rep.norm_e);
  rep.alpha_star = (l4e > 0.0) ? l42 / l4e : 1.0;
  rep.c_star = std::exp(std::log(rep.sup_b2) - rep.alpha_formula * std::log(rep.norm_e) -
                        (1.0 - rep.alpha_formula) * std::log(rep.sup_b4));
  rep.c_recovery = rep.sup_b2 / rep.norm_e;

  // Truncation step: E splits at level 2*||h||_E / |E|^{1/2}; the part below
  // the level must hold at least three quarters of the mass.
  const double level = 2.0 * rep.norm_e / std::sqrt(rep.measure_e);
  rep.e0_measure = sublevel_measure(h, E, level);
  rep.truncation_ok = rep.e0_measure >= 0.75 * rep.measure_e * (1.0 - 1e-9);
  return rep;
}

// Chebyshev polynomial T_n rescaled to live on (-eps, eps).
inline DiskPolynomial chebyshev_on_interval(int n, double eps) {
  if (n < 0 || !(eps > 0)) throw std::invalid_argument("chebyshev_on_interval: bad arguments");
  std::vector<double> t0{1.0}, t1{0.0, 1.0};
  if (n == 0) t1 = t0;
  for (int k = 2; k <= n; ++k) {
    std::vector<double> t2(static_cast<std::size_t>(k) + 1, 0.0);
    for (std::size_t j = 0; j < t1.size(); ++j) t2[j + 1] += 2.0 * t1[j];
    for (std::size_t j = 0; j < t0.size(); ++j) t2[j] -= t0[j];
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  DiskPolynomial h;
  h.coeff.resize(t1.size());
  double scale = 1.0;
  for (std::size_t j = 0; j < t1.size(); ++j) {
    h.coeff[j] = t1[j] * scale;
    scale /= eps;
  }
  return h;
}

struct ProbeRow {
  double eps = 0.0;
  double measure = 0.0;
  double alpha_star = 0.0;
};

struct ProbeResult {
  std::vector<ProbeRow> rows;
  double slope_log2 = 0.0;  // slope of 1/alpha* against log2(1/|E|)
  double r2 = 0.0;
};

// Sharpness probe: scaled Chebyshev extremals on shrinking intervals; the
// reciprocal exponent must grow linearly in the dyadic measure scale.
inline ProbeResult chebyshev_probe(int degree, const std::vector<double>& eps_list) {
  ProbeResult pr;
  std::vector<double> xs, ys;
  for (double eps : eps_list) {
    const DiskPolynomial h = chebyshev_on_interval(degree, eps);
    const IntervalSet E({{-eps, eps}});
    const ThreeBallReport rep = three_ball_check(h, E);
    pr.rows.push_back({eps, rep.measure_e, rep.alpha_star});
    xs.push_back(std::log2(1.0 / rep.measure_e));
    ys.push_back(1.0 / rep.alpha_star);
  }
  const LineFit lf = fit_line(xs, ys);
  pr.slope_log2 = lf.slope;
  pr.r2 = lf.r2;
  return pr;
}

struct BatteryRow {
  int degree = 0;
  double measure = 0.0;
  double alpha_star = 0.0;
  double c_star = 0.0;
  bool truncation_ok = false;
  bool formula_envelope_ok = false;  // c_star <= e * max(1, sup_b4/sup_b2)
};

struct BatteryResult {
  std::vector<BatteryRow> rows;
  double c_envelope = 0.0;  // max c_star over the battery
  long truncation_failures = 0;
  long formula_envelope_failures = 0;
  long recheck_violations = 0;  // instances violating the recorded envelope
};

inline DiskPolynomial random_polynomial(int degree, Rng& rng) {
  DiskPolynomial h;
  h.coeff.resize(static_cast<std::size_t>(degree) + 1);
  for (auto& c : h.coeff) c = std::complex<double>(rng.normal(), rng.normal());
  return h;
}

// Random-polynomial battery over a list of sensor measures; every instance
// is re-checked against the battery-wide envelope after it is known.
inline BatteryResult three_ball_battery(int num_polys, int max_degree,
                                        const std::vector<double>& measures, Rng& rng) {
  BatteryResult out;
  for (int t = 0; t < num_polys; ++t) {
    const int deg = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(max_degree)));
    const DiskPolynomial h = random_polynomial(deg, rng);
    for (double m : measures) {
      const IntervalSet E({{-0.5 * m, 0.5 * m}});
      const ThreeBallReport rep = three_ball_check(h, E);
      BatteryRow row;
      row.degree = deg;
      row.measure = rep.measure_e;
      row.alpha_star = rep.alpha_star;
      row.c_star = rep.c_star;
      row.truncation_ok = rep.truncation_ok;
      row.formula_envelope_ok =
          rep.c_star <= std::exp(1.0) * std::max(1.0, rep.sup_b4 / rep.sup_b2) * (1.0 + 1e-12);
      out.rows.push_back(row);
      if (!row.truncation_ok) ++out.truncation_failures;
      if (!row.formula_envelope_ok) ++out.formula_envelope_failures;
      out.c_envelope = std::max(out.c_envelope, rep.c_star);
    }
  }
  for (const BatteryRow& row : out.rows)
    if (row.c_star > out.c_envelope * (1.0 + 1e-12)) ++out.recheck_violations;
  return out;
}

}  // namespace speclab
