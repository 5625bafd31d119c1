#pragma once
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "speclab/grid.hpp"

namespace speclab {

// Confining potential together with an optional radial envelope pair
// phi(t) <= V(x) <= psi(t) at t = |x| (phi increasing) and an optional
// asymptotic power frame c1*(|x|+1)^beta1 <= V <= c2*(|x|+1)^beta2 valid
// for |x| >= frame_from.
struct Potential {
  std::string name;
  std::function<double(double)> V;
  std::function<double(double)> phi;  // may be empty
  std::function<double(double)> psi;  // may be empty
  double c1 = 0, beta1 = 0, c2 = 0, beta2 = 0;  // 0 = frame unset
  double frame_from = 1.0;
  double kappa_predicted = 0.0;  // growth exponent the envelope pair predicts; 0 = unset

  bool has_envelope() const { return static_cast<bool>(phi) && static_cast<bool>(psi); }
  bool has_power_frame() const { return beta1 > 0 && beta2 > 0; }
};

inline std::vector<double> sample_potential(const Potential& p, const Grid1D& g) {
  std::vector<double> v(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) v[static_cast<std::size_t>(i)] = p.V(g.x(i));
  return v;
}

struct EnvelopeReport {
  bool ok = true;
  double worst_x = 0.0;
  std::string what;
};

// Checks phi(|x|) <= V(x) <= psi(|x|) node by node, phi nondecreasing along
// the sampled radii, and phi(0) > 0 when strict_origin is requested.
inline EnvelopeReport validate_envelope(const Potential& p, const Grid1D& g,
                                        bool strict_origin = false) {
  EnvelopeReport r;
  if (!p.has_envelope()) {
    r.ok = false;
    r.what = "no envelope attached";
    return r;
  }
  if (strict_origin && !(p.phi(0.0) > 0.0)) {
    r.ok = false;
    r.worst_x = 0.0;
    r.what = "phi(0) must be positive";
    return r;
  }
  double prev_phi = -std::numeric_limits<double>::infinity();
  double prev_t = 0.0;
  for (int i = (g.n - 1) / 2; i < g.n; ++i) {  // radii 0..L
    const double t = g.x(i);
    const double lo = p.phi(t), hi = p.psi(t);
    if (lo < prev_phi) {
      r.ok = false;
      r.worst_x = t;
      r.what = "phi not nondecreasing between t=" + std::to_string(prev_t) +
               " and t=" + std::to_string(t);
      return r;
    }
    prev_phi = lo;
    prev_t = t;
    for (double x : {t, -t}) {
      const double v = p.V(x);
      if (!(lo <= v) || !(v <= hi)) {
        r.ok = false;
        r.worst_x = x;
        r.what = "envelope violated at x=" + std::to_string(x);
        return r;
      }
      if (t == 0.0) break;
    }
  }
  return r;
}

// Checks the power frame on nodes with |x| >= frame_from.
inline EnvelopeReport validate_power_frame(const Potential& p, const Grid1D& g) {
  EnvelopeReport r;
  if (!p.has_power_frame()) {
    r.ok = false;
    r.what = "no power frame attached";
    return r;
  }
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    if (std::abs(x) < p.frame_from) continue;
    const double v = p.V(x);
    const double lo = p.c1 * std::pow(std::abs(x) + 1.0, p.beta1);
    const double hi = p.c2 * std::pow(std::abs(x) + 1.0, p.beta2);
    if (!(lo <= v) || !(v <= hi)) {
      r.ok = false;
      r.worst_x = x;
      r.what = "power frame violated at x=" + std::to_string(x);
      return r;
    }
  }
  return r;
}

// Inverse of the increasing envelope floor: smallest t >= 0 with phi(t) >= y.
inline double phi_inverse(const Potential& p, double y) {
  if (!p.phi) throw std::invalid_argument("phi_inverse: no envelope attached");
  if (p.phi(0.0) >= y) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (p.phi(hi) < y) {
    hi *= 2.0;
    if (++guard > 1200)
      throw std::runtime_error("phi_inverse: potential does not confine up to the requested level");
  }
  double lo = hi * 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (p.phi(mid) < y ? lo : hi) = mid;
  }
  return hi;
}

// Padding radius r solving 10*exp(-2r+2) <= tail_tol, from the exponential
// tail bound of confined modes.
inline double tail_padding(double tail_tol = 1e-12) {
  if (!(tail_tol > 0)) throw std::invalid_argument("tail_padding: tolerance must be positive");
  return 0.5 * (2.0 + std::log(10.0 / tail_tol));
}

// Box half-width large enough that every mode below lambda_max + margin has
// negligible mass outside: L = phi^{-1}(lambda_max + margin) + tail padding.
inline double choose_truncation(const Potential& p, double lambda_max,
                                double margin = 2.0, double tail_tol = 1e-12) {
  return phi_inverse(p, lambda_max + margin) + tail_padding(tail_tol);
}

// Growth exponent of log C_obs in lambda for a sensor geometry (s, tau) over
// a potential with power frame (beta1, beta2).
inline double kappa_theory(double s, double tau, double beta1, double beta2) {
  if (!(s <= 1.0)) throw std::invalid_argument("kappa_theory: s must be <= 1");
  if (!(tau >= 0.0)) throw std::invalid_argument("kappa_theory: tau must be >= 0");
  if (!(beta1 > 0.0) || !(beta2 >= beta1))
    throw std::invalid_argument("kappa_theory: need beta2 >= beta1 > 0");
  if (s < 0.5 * (beta1 - beta2)) return tau / beta1 + 0.5;
  return tau / beta1 + s / beta1 + beta2 / (2.0 * beta1);
}

// Scale-growth exponent for envelope catalogs defined by their own pair:
// stretched exponentials give a2/(2*a1), log powers give tau2/(2*tau1).
inline double kappa_envelope_ratio(double lower_rate, double upper_rate) {
  if (!(lower_rate > 0) || !(upper_rate >= lower_rate))
    throw std::invalid_argument("kappa_envelope_ratio: need upper >= lower > 0");
  return upper_rate / (2.0 * lower_rate);
}

// ---- catalog ----

inline Potential make_harmonic() {
  Potential p;
  p.name = "harmonic";
  p.V = [](double x) { return x * x; };
  p.phi = [](double t) { return t * t; };
  p.psi = [](double t) { return (t + 1.0) * (t + 1.0); };
  p.c1 = 0.25;
  p.beta1 = 2.0;
  p.c2 = 1.0;
  p.beta2 = 2.0;
  p.frame_from = 1.0;
  p.kappa_predicted = 0.5;
  return p;
}

// V = phi = psi = c*(|x|+1)^beta (the equality case of the power frame).
inline Potential make_power(double c, double beta) {
  if (!(c > 0) || !(beta > 0)) throw std::invalid_argument("make_power: c, beta must be positive");
  Potential p;
  p.name = "power";
  p.V = [c, beta](double x) { return c * std::pow(std::abs(x) + 1.0, beta); };
  p.phi = [c, beta](double t) { return c * std::pow(t + 1.0, beta); };
  p.psi = p.phi;
  p.c1 = c;
  p.beta1 = beta;
  p.c2 = c;
  p.beta2 = beta;
  p.frame_from = 0.0;
  p.kappa_predicted = 0.5;
  return p;
}

// Distinct power floor and ceiling; V sits on the floor (choice recorded in
// the name so run metadata carries it).
inline Potential make_power_pair(double c1, double beta1, double c2, double beta2) {
  if (!(c1 > 0 && beta1 > 0 && c2 >= c1 && beta2 >= beta1))
    throw std::invalid_argument("make_power_pair: need c2 >= c1 > 0, beta2 >= beta1 > 0");
  Potential p;
  p.name = "power_pair(V=floor)";
  p.V = [c1, beta1](double x) { return c1 * std::pow(std::abs(x) + 1.0, beta1); };
  p.phi = [c1, beta1](double t) { return c1 * std::pow(t + 1.0, beta1); };
  p.psi = [c2, beta2](double t) { return c2 * std::pow(t + 1.0, beta2); };
  p.c1 = c1;
  p.beta1 = beta1;
  p.c2 = c2;
  p.beta2 = beta2;
  p.frame_from = 0.0;
  p.kappa_predicted = std::max(0.5, beta2 / (2.0 * beta1));
  return p;
}

// V = c1*exp(a1*|x|^g) with upper envelope c2*exp(a2*|x|^g), 0 < g < 1.
inline Potential make_stretched_exp(double c1, double a1, double c2, double a2,
                                    double gamma) {
  if (!(0 < gamma && gamma < 1))
    throw std::invalid_argument("make_stretched_exp: exponent must lie in (0,1)");
  if (!(c1 > 0 && a1 > 0 && c2 >= c1 && a2 >= a1))
    throw std::invalid_argument("make_stretched_exp: need c2 >= c1 > 0, a2 >= a1 > 0");
  Potential p;
  p.name = "stretched_exp";
  p.V = [c1, a1, gamma](double x) { return c1 * std::exp(a1 * std::pow(std::abs(x), gamma)); };
  p.phi = [c1, a1, gamma](double t) { return c1 * std::exp(a1 * std::pow(t, gamma)); };
  p.psi = [c2, a2, gamma](double t) { return c2 * std::exp(a2 * std::pow(t, gamma)); };
  p.kappa_predicted = std::max(0.5, kappa_envelope_ratio(a1, a2));
  return p;
}

// V = exp(d1*log^{delta}(|x|+1)) with upper envelope exp(d2*log^{delta}(|x|+1)).
inline Potential make_exp_log(double d1, double d2, double delta) {
  if (!(d1 > 0 && d2 >= d1 && delta > 0))
    throw std::invalid_argument("make_exp_log: need d2 >= d1 > 0, delta > 0");
  Potential p;
  p.name = "exp_log";
  p.V = [d1, delta](double x) {
    return std::exp(d1 * std::pow(std::log(std::abs(x) + 1.0), delta));
  };
  p.phi = [d1, delta](double t) { return std::exp(d1 * std::pow(std::log(t + 1.0), delta)); };
  p.psi = [d2, delta](double t) { return std::exp(d2 * std::pow(std::log(t + 1.0), delta)); };
  p.kappa_predicted = std::max(0.5, kappa_envelope_ratio(d1, d2));
  return p;
}

// V = c1*log^{tau1}(|x|+e) with upper envelope c2*log^{tau2}(|x|+e); the +e
// shift keeps the floor positive at the origin without changing asymptotics.
inline Potential make_log_power(double c1, double tau1, double c2, double tau2) {
  if (!(c1 > 0 && tau1 > 0 && c2 >= c1 && tau2 >= tau1))
    throw std::invalid_argument("make_log_power: need c2 >= c1 > 0, tau2 >= tau1 > 0");
  const double e = 2.718281828459045235360287471353;
  Potential p;
  p.name = "log_power";
  p.V = [c1, tau1, e](double x) { return c1 * std::pow(std::log(std::abs(x) + e), tau1); };
  p.phi = [c1, tau1, e](double t) { return c1 * std::pow(std::log(t + e), tau1); };
  p.psi = [c2, tau2, e](double t) { return c2 * std::pow(std::log(t + e), tau2); };
  p.kappa_predicted = std::max(0.5, kappa_envelope_ratio(tau1, tau2));
  return p;
}

}  // namespace speclab
