#pragma once
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "speclab/eigensolver.hpp"
#include "speclab/fit.hpp"
#include "speclab/interval_set.hpp"
#include "speclab/symeig.hpp"

namespace speclab {

// Sensor Gram matrix of a spectral subspace against a weighted node set:
//   G[j][k] = sum_i w_i phi_j(x_i) phi_k(x_i),
// accumulated in extended precision because its smallest eigenvalue can sit
// many orders below the double-precision assembly noise of a naive sum.
inline std::vector<long double> assemble_gram(const SpectralSubspace& sub,
                                              const std::vector<double>& weights) {
  const std::size_t m = sub.m();
  const std::size_t n = sub.grid.nodes().size();
  if (weights.size() != n) throw std::invalid_argument("assemble_gram: weight/grid mismatch");
  std::vector<long double> g(m * m, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    const long double w = weights[i];
    if (w <= 0.0L) continue;
    for (std::size_t j = 0; j < m; ++j) {
      const long double wj = w * static_cast<long double>(sub.vecs[j][i]);
      for (std::size_t k = j; k < m; ++k)
        g[j * m + k] += wj * static_cast<long double>(sub.vecs[k][i]);
    }
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < j; ++k) g[j * m + k] = g[k * m + j];
  return g;
}

struct ObservabilityResult {
  std::size_t m = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double c_obs = std::numeric_limits<double>::infinity();
  bool unobservable = false;        // lambda_min at or below the trust floor
  std::vector<double> extremal;     // coefficients of the worst-observed mode
  double certificate_rel = 0.0;     // independent re-quadrature vs lambda_min
};

inline constexpr double kGramTrustFloor = 1e-30;

// Extract the observability constant from a precomputed Gram (leading p x p
// block of the full m x m matrix, for sweeps that reuse one assembly).
inline ObservabilityResult observability_from_gram(const SpectralSubspace& sub,
                                                   const std::vector<double>& weights,
                                                   const std::vector<long double>& gram,
                                                   std::size_t p) {
  const std::size_t m = sub.m();
  if (p == 0 || p > m) throw std::invalid_argument("observability_from_gram: bad block size");
  std::vector<long double> block(p * p);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = 0; k < p; ++k) block[j * p + k] = gram[j * m + k];
  const SymEigenResult eig = sym_eigen(std::move(block), p);

  ObservabilityResult out;
  out.m = p;
  out.lambda_min = static_cast<double>(eig.values.front());
  out.lambda_max = static_cast<double>(eig.values.back());
  out.extremal.resize(p);
  for (std::size_t i = 0; i < p; ++i) out.extremal[i] = static_cast<double>(eig.vec(i, 0));

  // Independent certificate: quadrature of the extremal combination against
  // the weights must reproduce the reported minimum.
  const std::size_t n = sub.grid.nodes().size();
  long double quad = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double w = weights[i];
    if (w <= 0.0L) continue;
    long double v = 0.0L;
    for (std::size_t k = 0; k < p; ++k)
      v += static_cast<long double>(out.extremal[k]) * static_cast<long double>(sub.vecs[k][i]);
    quad += w * v * v;
  }
  const long double denom = std::max<long double>(std::fabs(eig.values.front()), 1e-300L);
  out.certificate_rel = static_cast<double>(std::fabs(quad - eig.values.front()) / denom);

  if (!(out.lambda_min > kGramTrustFloor)) {
    out.unobservable = true;
    out.c_obs = std::numeric_limits<double>::infinity();
  } else {
    out.c_obs = 1.0 / out.lambda_min;
  }
  return out;
}

inline ObservabilityResult observability_constant(const SpectralSubspace& sub,
                                                  const IntervalSet& sensor) {
  const std::vector<double> w = cell_weights(sub.grid, sensor);
  const std::vector<long double> gram = assemble_gram(sub, w);
  return observability_from_gram(sub, w, gram, sub.m());
}

struct SweepPoint {
  double lambda = 0.0;
  ObservabilityResult obs;
};

// One Gram assembly at the largest cutoff; every smaller cutoff reads its
// own constant off the leading principal block (modes ascend in energy).
inline std::vector<SweepPoint> observability_sweep(const SpectralSubspace& sub,
                                                   const IntervalSet& sensor,
                                                   const std::vector<double>& lambdas) {
  const std::vector<double> w = cell_weights(sub.grid, sensor);
  const std::vector<long double> gram = assemble_gram(sub, w);
  std::vector<SweepPoint> pts;
  pts.reserve(lambdas.size());
  for (double lam : lambdas) {
    std::size_t p = 0;
    while (p < static_cast<std::size_t>(sub.m()) && sub.lambdas[p] <= lam) ++p;
    if (p == 0) throw std::invalid_argument("observability_sweep: cutoff below ground state");
    SweepPoint sp;
    sp.lambda = lam;
    sp.obs = observability_from_gram(sub, w, gram, p);
    pts.push_back(std::move(sp));
  }
  return pts;
}

// Growth-exponent fit: slope of log log C_obs against log lambda over the
// ceil(N/2) largest cutoffs (the asymptotic half of the sweep).
struct KappaFit {
  double kappa_hat = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t used = 0;
};

inline KappaFit fit_kappa(const std::vector<SweepPoint>& pts) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& sp : pts)
    if (!sp.obs.unobservable && sp.obs.c_obs > 1.0) usable.emplace_back(sp.lambda, sp.obs.c_obs);
  if (usable.size() < 2) throw std::invalid_argument("fit_kappa: need at least two usable points");
  const std::size_t half = (usable.size() + 1) / 2;
  std::vector<double> xs, ys;
  for (std::size_t i = usable.size() - half; i < usable.size(); ++i) {
    xs.push_back(std::log(usable[i].first));
    ys.push_back(std::log(std::log(usable[i].second)));
  }
  const LineFit lf = fit_line(xs, ys);
  KappaFit kf;
  kf.kappa_hat = lf.slope;
  kf.intercept = lf.intercept;
  kf.r2 = lf.r2;
  kf.used = half;
  return kf;
}

}  // namespace speclab
