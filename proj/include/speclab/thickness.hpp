#pragma once
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "speclab/interval_set.hpp"
#include "speclab/rng.hpp"

namespace speclab {

inline double ang(double x) { return std::sqrt(1.0 + x * x); }  // <x>

// Scale-adapted density parameters: the set must hold a gamma^{<x>^tau}
// fraction of every interval of radius D*<x>^s centered at x.
struct ThicknessParams {
  double s = 0.0;
  double tau = 0.0;
  double gamma = 0.25;
  double D = 1.0;
};

// Cell-wise density parameters on the graded partition x_n = a*n^{1/(1-s)}.
struct PartitionParams {
  double a = 1.0;
  double s = 0.0;
  double tau = 0.0;
  double gamma1 = 0.25;
};

inline void validate(const ThicknessParams& p) {
  if (!(p.s <= 1.0)) throw std::invalid_argument("thickness: s must be <= 1");
  if (!(p.tau >= 0.0)) throw std::invalid_argument("thickness: tau must be >= 0");
  if (!(p.gamma > 0.0 && p.gamma < 0.5))
    throw std::invalid_argument("thickness: gamma must lie in (0, 1/2)");
  if (!(p.D > 0.0)) throw std::invalid_argument("thickness: D must be positive");
}

inline void validate(const PartitionParams& p) {
  if (!(p.s < 1.0)) throw std::invalid_argument("partition: s must be < 1");
  if (!(p.tau >= 0.0)) throw std::invalid_argument("partition: tau must be >= 0");
  if (!(p.gamma1 > 0.0 && p.gamma1 < 0.5))
    throw std::invalid_argument("partition: gamma1 must lie in (0, 1/2)");
  if (!(p.a > 0.0)) throw std::invalid_argument("partition: a must be positive");
}

// x_n = a * n^{1/(1-s)} for n = 0..N (s < 1).
inline std::vector<double> partition_points(double a, double s, int N) {
  if (!(s < 1.0)) throw std::invalid_argument("partition_points: s must be < 1");
  if (!(a > 0.0)) throw std::invalid_argument("partition_points: a must be positive");
  std::vector<double> xs(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n)
    xs[static_cast<std::size_t>(n)] = a * std::pow(static_cast<double>(n), 1.0 / (1.0 - s));
  return xs;
}

struct ThicknessReport {
  bool ok = true;
  double worst_margin = 0.0;   // min over checks of (actual - required)
  double worst_center = 0.0;
  long checks = 0;
  std::string what;
};

// Direct window check on a center grid. Centers whose test interval sticks
// out of [-W, W] are skipped: the set only lives on the window, so a clipped
// interval would see artificially reduced mass.
inline ThicknessReport is_thick_direct(const IntervalSet& set, const ThicknessParams& p,
                                       double W, double step) {
  validate(p);
  if (!(step > 0) || !(W > 0)) throw std::invalid_argument("is_thick_direct: need W, step > 0");
  ThicknessReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const double lg = std::log(p.gamma);
  for (double x = -W; x <= W + 0.5 * step; x += step) {
    const double r = p.D * std::pow(ang(x), p.s);
    if (x - r < -W || x + r > W) continue;
    const double required = std::exp(std::pow(ang(x), p.tau) * lg) * 2.0 * r;
    const double actual = set.measure_within(x - r, x + r);
    const double margin = actual - required;
    ++rep.checks;
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_center = x;
    }
    if (margin < 0 && rep.ok) {
      rep.ok = false;
      rep.what = "density deficit at x=" + std::to_string(x);
    }
  }
  if (rep.checks == 0) {
    rep.ok = false;
    rep.what = "no admissible centers in window";
  }
  return rep;
}

// Cell check over the graded partition, clipped to [-W, W]. Cell n >= 1 is
// (x_n, x_{n+1}) with anchor x_n (mirrored for n <= -1); cell 0 is (-x_1, x_1)
// with anchor 0.
inline ThicknessReport is_thick_partition(const IntervalSet& set, const PartitionParams& p,
                                          double W) {
  validate(p);
  if (!(W > 0)) throw std::invalid_argument("is_thick_partition: need W > 0");
  ThicknessReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const double lg1 = std::log(p.gamma1);
  const double inv = 1.0 / (1.0 - p.s);

  auto check_cell = [&](double lo, double hi, double anchor) {
    const double clo = std::max(lo, -W), chi = std::min(hi, W);
    if (!(chi > clo)) return;
    const double required = std::exp(std::pow(ang(anchor), p.tau) * lg1) * (chi - clo);
    const double actual = set.measure_within(clo, chi);
    const double margin = actual - required;
    ++rep.checks;
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_center = 0.5 * (clo + chi);
    }
    if (margin < 0 && rep.ok) {
      rep.ok = false;
      rep.what = "cell deficit anchored at x=" + std::to_string(anchor);
    }
  };

  const double x1 = p.a;
  check_cell(-x1, x1, 0.0);
  for (int n = 1;; ++n) {
    const double xn = p.a * std::pow(static_cast<double>(n), inv);
    if (xn >= W) break;
    const double xn1 = p.a * std::pow(static_cast<double>(n + 1), inv);
    check_cell(xn, xn1, xn);
    check_cell(-xn1, -xn, xn);
    if (n > 100000000) throw std::runtime_error("is_thick_partition: runaway partition");
  }
  if (rep.checks == 0) {
    rep.ok = false;
    rep.what = "no cells in window";
  }
  return rep;
}

// ---- constant recipes between the two formulations (s < 1) ----

namespace detail {
inline double step_upper_coeff(double s) {  // x_{n+1}-x_n <= d_s * a * n^{s/(1-s)}
  return (s >= 0.0) ? std::pow(2.0, s / (1.0 - s)) / (1.0 - s) : 1.0 / (1.0 - s);
}
inline double step_lower_coeff(double s) {  // x_{n+1}-x_n >= e_s * a * n^{s/(1-s)}
  return (s >= 0.0) ? 1.0 / (1.0 - s) : std::pow(2.0, s / (1.0 - s)) / (1.0 - s);
}
inline double half_cell_coeff(double s) {  // |I_n|/2 >= c_s * a * n^{s/(1-s)}
  return (s > 0.0) ? 0.5 / (1.0 - s) : std::pow(2.0, s / (1.0 - s)) * 0.5 / (1.0 - s);
}
inline double ratio_bound(double s) { return std::pow(2.0, 1.0 / (1.0 - s)); }  // x_{n+1}/x_n <= l_s
}  // namespace detail

// Given a direct-thick set, cell parameters that it must satisfy.
inline PartitionParams partition_from_direct(const ThicknessParams& p) {
  validate(p);
  if (!(p.s < 1.0))
    throw std::invalid_argument("partition_from_direct: cell recipe needs s < 1");
  const double s = p.s, tau = p.tau;
  const double ls = detail::ratio_bound(s);
  const double Dp = (s > 0.0) ? p.D * std::pow(1.0 + ls * ls, 0.5 * s) : p.D;
  const double cs = detail::half_cell_coeff(s);
  const double ds = detail::step_upper_coeff(s);
  const double a = std::max({1.0, p.D, std::pow(Dp / cs, 1.0 / (1.0 - s))});
  // test interval at the cell midpoint occupies at least fraction b of the cell
  const double qs = (s <= 0.0) ? std::pow(1.0 + ls * ls, 0.5 * s) : 1.0;
  const double b = 2.0 * p.D * qs * std::pow(a, s - 1.0) / ds;
  const double cl = std::pow(1.0 + ls * ls, 0.5 * tau);
  const double g_tail = std::pow(p.gamma, cl) * std::min(1.0, b);
  const double g_core = p.gamma * p.D / a;
  PartitionParams q;
  q.a = a;
  q.s = s;
  q.tau = tau;
  q.gamma1 = std::max(1e-300, std::min({g_tail, g_core, 0.49999}));
  return q;
}

// Given a cell-thick set, direct parameters that it must satisfy.
inline ThicknessParams direct_from_partition(const PartitionParams& p) {
  validate(p);
  const double s = p.s, tau = p.tau, a = p.a;
  const double ls = detail::ratio_bound(s);
  const double ds = detail::step_upper_coeff(s);
  const double es = detail::step_lower_coeff(s);
  const double Cs = (s >= 0.0) ? 1.0 : std::pow(1.0 + ls * ls, 0.5 * s);
  const double Us = (s >= 0.0) ? std::pow(1.0 + ls * ls, 0.5 * s) : 1.0;
  const double D_tail = ds * std::pow(a, 1.0 - s) / Cs;
  const double m0 = (s >= 0.0) ? 1.0 : std::pow(1.0 + a * a, 0.5 * s);
  const double D0 = 2.0 * a / m0;
  const double D = std::max(D_tail, D0);
  const double b2 = es * std::pow(a, 1.0 - s) / (2.0 * D * Us);
  const double M0 = (s >= 0.0) ? std::pow(1.0 + a * a, 0.5 * s) : 1.0;
  const double b0 = a / (D * M0);
  ThicknessParams q;
  q.s = s;
  q.tau = tau;
  q.D = D;
  q.gamma = std::max(1e-300, std::min({p.gamma1 * std::min(1.0, b2),
                                       p.gamma1 * std::min(1.0, b0), 0.49999}));
  return q;
}

// Maximum multiplicity of the family of cells dilated A-fold about their
// centers, over cells |n| <= N.
inline int dilated_cell_multiplicity(double a, double s, int N, double A) {
  if (!(A >= 1.0)) throw std::invalid_argument("dilated_cell_multiplicity: A >= 1");
  auto xs = partition_points(a, s, N + 1);
  std::vector<std::pair<double, double>> dil;
  auto push = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo) * A;
    dil.emplace_back(c - r, c + r);
  };
  push(-xs[1], xs[1]);
  for (int n = 1; n <= N; ++n) {
    push(xs[static_cast<std::size_t>(n)], xs[static_cast<std::size_t>(n) + 1]);
    push(-xs[static_cast<std::size_t>(n) + 1], -xs[static_cast<std::size_t>(n)]);
  }
  std::vector<double> cuts;
  for (auto& [lo, hi] : dil) {
    cuts.push_back(lo);
    cuts.push_back(hi);
  }
  std::sort(cuts.begin(), cuts.end());
  int best = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    if (!(cuts[i + 1] > cuts[i])) continue;
    int cnt = 0;
    for (auto& [lo, hi] : dil)
      if (lo < mid && mid < hi) ++cnt;
    best = std::max(best, cnt);
  }
  return best;
}

// ---- s = 1 window criteria ----

// tau = 0: |set ∩ (-n, n)| >= gamma1 * n for every integer n0 <= n <= W.
inline ThicknessReport is_thick_s1(const IntervalSet& set, double gamma1, int n0, double W) {
  if (!(gamma1 > 0 && gamma1 < 1) || n0 < 1)
    throw std::invalid_argument("is_thick_s1: need gamma1 in (0,1), n0 >= 1");
  ThicknessReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int n = n0; n <= static_cast<int>(std::floor(W)); ++n) {
    const double actual = set.measure_within(-n, n);
    const double margin = actual - gamma1 * n;
    ++rep.checks;
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_center = n;
    }
    if (margin < 0 && rep.ok) {
      rep.ok = false;
      rep.what = "window deficit at n=" + std::to_string(n);
    }
  }
  if (rep.checks == 0) {
    rep.ok = false;
    rep.what = "window smaller than n0";
  }
  return rep;
}

// Direct parameters certified by the s=1, tau=0 window criterion.
inline ThicknessParams s1_direct_params(double gamma1, int n0) {
  ThicknessParams p;
  p.s = 1.0;
  p.tau = 0.0;
  p.D = 1.0 + n0;
  p.gamma = std::min(gamma1 / (4.0 * p.D), 0.49999);
  return p;
}

// tau > 0: any window mass mu = |set ∩ (-t0, t0)| > 0 certifies the scaled
// density with gamma = exp(-sup_{t>=max(1,t0)} ln(2 D t / mu) / t^tau).
inline double s1_tau_gamma(double mu, double D, double tau, double t0) {
  if (!(mu > 0) || !(D > 0) || !(tau > 0))
    throw std::invalid_argument("s1_tau_gamma: need mu, D, tau > 0");
  const double tlo = std::max(1.0, t0);
  double sup = -std::numeric_limits<double>::infinity();
  // coarse log-spaced scan, then golden refinement around the best point
  double best_t = tlo;
  for (int i = 0; i <= 400; ++i) {
    const double t = tlo * std::pow(1.05, i);
    const double v = std::log(2.0 * D * t / mu) / std::pow(t, tau);
    if (v > sup) {
      sup = v;
      best_t = t;
    }
  }
  double lo = best_t / 1.05, hi = best_t * 1.05;
  const double gr = 0.61803398874989484820458683436564;
  for (int it = 0; it < 120; ++it) {
    const double t1 = hi - gr * (hi - lo), t2 = lo + gr * (hi - lo);
    const double f1 = std::log(2.0 * D * t1 / mu) / std::pow(t1, tau);
    const double f2 = std::log(2.0 * D * t2 / mu) / std::pow(t2, tau);
    if (f1 < f2)
      lo = t1;
    else
      hi = t2;
  }
  const double t = 0.5 * (lo + hi);
  sup = std::max(sup, std::log(2.0 * D * t / mu) / std::pow(t, tau));
  return std::exp(-std::max(sup, 0.0));
}

// Peak of t -> g^t * t^N over t > 0 (g in (0,1)): closed form used to cross
// check the window criteria's bookkeeping.
struct PowerPeak {
  double t_star;
  double value;
};
inline PowerPeak gamma_power_peak(double g, double N) {
  if (!(g > 0 && g < 1) || !(N > 0))
    throw std::invalid_argument("gamma_power_peak: need g in (0,1), N > 0");
  const double l = std::log(1.0 / g);
  PowerPeak p;
  p.t_star = N / l;
  p.value = std::exp(N * std::log(N) - N * std::log(l) - N);
  return p;
}

// One uniformly placed sub-interval of length delta*p in every period cell
// [k*p, (k+1)*p], clipped to [-W, W].
inline IntervalSet random_thick_periodic(double p, double delta, double W, Rng& rng) {
  if (!(p > 0) || !(delta > 0) || !(delta <= 1) || !(W > 0))
    throw std::invalid_argument("random_thick_periodic: need p, W > 0 and delta in (0,1]");
  std::vector<std::pair<double, double>> blocks;
  const long k0 = static_cast<long>(std::floor(-W / p)) - 1;
  const long k1 = static_cast<long>(std::ceil(W / p));
  for (long k = k0; k <= k1; ++k) {
    const double cell = static_cast<double>(k) * p;
    const double off = rng.uniform() * (1.0 - delta) * p;
    const double lo = cell + off, hi = lo + delta * p;
    if (hi < -W || lo > W) continue;
    blocks.emplace_back(std::max(lo, -W), std::min(hi, W));
  }
  return IntervalSet(std::move(blocks));
}

// Random set that is cell-thick by construction: every window-clipped cell
// receives one uniformly placed block holding `fill` times the required mass.
inline IntervalSet random_thick_set(const PartitionParams& p, double W, Rng& rng,
                                    double fill = 1.5) {
  validate(p);
  if (!(fill >= 1.0)) throw std::invalid_argument("random_thick_set: fill must be >= 1");
  const double lg1 = std::log(p.gamma1);
  const double inv = 1.0 / (1.0 - p.s);
  std::vector<std::pair<double, double>> blocks;
  auto fill_cell = [&](double lo, double hi, double anchor) {
    const double clo = std::max(lo, -W), chi = std::min(hi, W);
    if (!(chi > clo)) return;
    const double len = chi - clo;
    const double frac = std::exp(std::pow(ang(anchor), p.tau) * lg1);
    const double block = std::min(fill * frac * len, len);
    const double off = rng.uniform() * (len - block);
    blocks.emplace_back(clo + off, clo + off + block);
  };
  fill_cell(-p.a, p.a, 0.0);
  for (int n = 1;; ++n) {
    const double xn = p.a * std::pow(static_cast<double>(n), inv);
    if (xn >= W) break;
    const double xn1 = p.a * std::pow(static_cast<double>(n + 1), inv);
    fill_cell(xn, xn1, xn);
    fill_cell(-xn1, -xn, xn);
  }
  return IntervalSet(std::move(blocks));
}

}  // namespace speclab
