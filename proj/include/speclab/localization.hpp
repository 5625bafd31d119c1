#pragma once
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "speclab/eigensolver.hpp"
#include "speclab/potential.hpp"
#include "speclab/rng.hpp"

namespace speclab {

// Mass of phi^2 on the window (-a, a), exact cell weights: each node owns the
// cell [x - h/2, x + h/2] clipped to the box, and contributes the part of its
// cell inside the window. Summing window + complement recovers ||phi||_h^2.
inline double window_mass(const Grid1D& g, const std::vector<double>& phi, double a) {
  if (phi.size() != static_cast<std::size_t>(g.n))
    throw std::invalid_argument("window_mass: vector length does not match the grid");
  if (a <= 0.0) return 0.0;
  long double acc = 0.0L;
  for (int i = 0; i < g.n; ++i) {
    const double xi = g.x(i);
    const double lo = std::max(xi - 0.5 * g.h, -g.L);
    const double hi = std::min(xi + 0.5 * g.h, g.L);
    const double w = std::max(0.0, std::min(hi, a) - std::max(lo, -a));
    if (w > 0.0)
      acc += static_cast<long double>(w) * phi[static_cast<std::size_t>(i)] *
             phi[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(acc);
}

inline double total_mass(const Grid1D& g, const std::vector<double>& phi) {
  long double acc = 0.0L;
  for (int i = 0; i < g.n; ++i) {
    const double xi = g.x(i);
    const double w = std::min(xi + 0.5 * g.h, g.L) - std::max(xi - 0.5 * g.h, -g.L);
    acc += static_cast<long double>(w) * phi[static_cast<std::size_t>(i)] *
           phi[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(acc);
}

// ---------------------------------------------------------------------------
// Exponential-decay audit for a single mode: with R the classically allowed
// radius at level lambda + 2, the mass beyond R + r must obey the explicit
// envelope 10 exp(-2r + 2) ||phi||^2.
// ---------------------------------------------------------------------------
struct TailReport {
  double cut = 0.0;    // R + r
  double tail = 0.0;   // mass outside (-cut, cut)
  double total = 0.0;  // full squared norm
  double bound = 0.0;  // 10 exp(-2r + 2) * total
  bool ok = false;
};

inline TailReport agmon_tail_check(const Grid1D& g, const std::vector<double>& phi, double R,
                                   double r, double tail_tol = 1e-12) {
  const double need = R + r + tail_padding(tail_tol);
  if (need > g.L)
    throw std::domain_error(
        "localization: box half-width " + std::to_string(g.L) +
        " cannot certify the tail at radius " + std::to_string(R + r) +
        "; enlarge it to at least " + std::to_string(need));
  TailReport rep;
  rep.cut = R + r;
  rep.total = total_mass(g, phi);
  rep.tail = rep.total - window_mass(g, phi, rep.cut);
  rep.bound = 10.0 * std::exp(-2.0 * r + 2.0) * rep.total;
  rep.ok = rep.tail <= rep.bound;
  return rep;
}

struct AgmonBattery {
  long checks = 0;
  long failures = 0;
  double worst_ratio = 0.0;  // max tail / bound over the battery
};

// Every mode of the subspace, each at its own classically allowed radius,
// over a list of padding radii.
inline AgmonBattery agmon_battery(const SpectralSubspace& sub, const Potential& pot,
                                  const std::vector<double>& r_list, double tail_tol = 1e-12) {
  AgmonBattery out;
  for (int k = 0; k < sub.m(); ++k) {
    const double R = phi_inverse(pot, 2.0 + sub.lambdas[static_cast<std::size_t>(k)]);
    for (double r : r_list) {
      const TailReport rep =
          agmon_tail_check(sub.grid, sub.vecs[static_cast<std::size_t>(k)], R, r, tail_tol);
      ++out.checks;
      if (!rep.ok) ++out.failures;
      if (rep.bound > 0.0) out.worst_ratio = std::max(out.worst_ratio, rep.tail / rep.bound);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Window localization for whole subspaces: every unit vector of the spectral
// subspace keeps at least half its mass inside (-(R+r), R+r) once r reaches
// the lemma radius r = c0 + (1/2) log(lambda + 2) + (1/2) log R. The minimal
// sufficient r is found by bisection and may be negative (the window may be
// smaller than the classically allowed region).
// ---------------------------------------------------------------------------
struct LocalizationRow {
  double lambda = 0.0;
  double R = 0.0;
  double r_min = 0.0;    // worst minimal padding across the probe vectors
  double r_lemma = 0.0;  // predictor radius
  long failures = 0;     // probe vectors still unlocalized at r_lemma
  bool pass = false;
};

inline LocalizationRow subspace_localization_check(const SpectralSubspace& sub,
                                                   const Potential& pot, double c0,
                                                   int num_random, Rng& rng) {
  if (sub.m() == 0) throw std::domain_error("localization: empty subspace");
  LocalizationRow row;
  row.lambda = sub.lambda_cut;
  row.R = phi_inverse(pot, row.lambda + 2.0);
  row.r_lemma = c0 + 0.5 * std::log(row.lambda + 2.0) + 0.5 * std::log(std::max(1.0, row.R));

  const Grid1D& g = sub.grid;
  const std::size_t n = static_cast<std::size_t>(g.n);
  std::vector<std::vector<double>> probes;
  for (int t = 0; t < num_random; ++t) {
    std::vector<double> c(static_cast<std::size_t>(sub.m()));
    double nrm2 = 0.0;
    for (auto& ck : c) {
      ck = rng.normal();
      nrm2 += ck * ck;
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    std::vector<double> phi(n, 0.0);
    for (int k = 0; k < sub.m(); ++k) {
      const double ck = c[static_cast<std::size_t>(k)] * inv;
      const auto& vk = sub.vecs[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < n; ++i) phi[i] += ck * vk[i];
    }
    probes.push_back(std::move(phi));
  }
  probes.push_back(sub.vecs.back());  // the top mode is the natural extremal

  double r_worst = -row.R;
  for (const auto& phi : probes) {
    const double total = total_mass(g, phi);
    if (!(total > 0.0)) throw std::domain_error("localization: probe vector has zero mass");
    if (window_mass(g, phi, row.R + row.r_lemma) < 0.5 * total) ++row.failures;
    double lo = -row.R, hi = g.L - row.R;
    if (window_mass(g, phi, row.R + hi) < 0.5 * total)
      throw std::domain_error("localization: box half-width " + std::to_string(g.L) +
                              " holds less than half the probe mass; enlarge the box");
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (window_mass(g, phi, row.R + mid) < 0.5 * total ? lo : hi) = mid;
    }
    r_worst = std::max(r_worst, hi);
  }
  row.r_min = r_worst;
  row.pass = row.failures == 0 && row.r_min <= row.r_lemma;
  return row;
}

}  // namespace speclab
