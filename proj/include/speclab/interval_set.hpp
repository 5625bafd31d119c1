#pragma once
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "speclab/grid.hpp"

namespace speclab {

// Finite union of closed intervals, kept sorted, disjoint and non-degenerate.
// Measure queries against a window run in O(log k) via prefix sums.
class IntervalSet {
public:
  IntervalSet() = default;

  explicit IntervalSet(std::vector<std::pair<double, double>> raw) {
    for (auto& [a, b] : raw)
      if (!(a <= b)) throw std::invalid_argument("IntervalSet: interval with a > b");
    std::sort(raw.begin(), raw.end());
    for (const auto& [a, b] : raw) {
      if (b <= a) continue;  // degenerate, measure zero
      if (!iv_.empty() && a <= iv_.back().second)
        iv_.back().second = std::max(iv_.back().second, b);
      else
        iv_.emplace_back(a, b);
    }
    rebuild_prefix();
  }

  const std::vector<std::pair<double, double>>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  std::size_t size() const { return iv_.size(); }

  double measure() const { return prefix_.empty() ? 0.0 : prefix_.back(); }

  bool contains(double x) const {
    auto it = std::upper_bound(iv_.begin(), iv_.end(), x,
                               [](double v, const auto& p) { return v < p.first; });
    if (it == iv_.begin()) return false;
    --it;
    return x <= it->second;
  }

  // |set ∩ [a, b]|
  double measure_within(double a, double b) const {
    if (!(b > a) || iv_.empty()) return 0.0;
    // first interval whose right end exceeds a
    std::size_t i0 = static_cast<std::size_t>(
        std::lower_bound(ends_.begin(), ends_.end(), a) - ends_.begin());
    // last interval whose left end is below b
    std::size_t i1 = static_cast<std::size_t>(
        std::lower_bound(starts_.begin(), starts_.end(), b) - starts_.begin());
    if (i0 >= i1) return 0.0;
    double total = prefix_[i1] - prefix_[i0];
    const auto& [a0, b0] = iv_[i0];
    total -= std::clamp(a - a0, 0.0, b0 - a0);
    const auto& [a1, b1] = iv_[i1 - 1];
    total -= std::clamp(b1 - b, 0.0, b1 - a1);
    return std::max(total, 0.0);
  }

  IntervalSet unite(const IntervalSet& o) const {
    std::vector<std::pair<double, double>> all = iv_;
    all.insert(all.end(), o.iv_.begin(), o.iv_.end());
    return IntervalSet(std::move(all));
  }

  IntervalSet intersect(const IntervalSet& o) const {
    std::vector<std::pair<double, double>> out;
    std::size_t i = 0, j = 0;
    while (i < iv_.size() && j < o.iv_.size()) {
      const double lo = std::max(iv_[i].first, o.iv_[j].first);
      const double hi = std::min(iv_[i].second, o.iv_[j].second);
      if (lo < hi) out.emplace_back(lo, hi);
      (iv_[i].second < o.iv_[j].second ? i : j)++;
    }
    return IntervalSet(std::move(out));
  }

  IntervalSet clip(double a, double b) const {
    return intersect(IntervalSet({{a, b}}));
  }

  IntervalSet complement_within(double a, double b) const {
    if (!(b > a)) return IntervalSet();
    std::vector<std::pair<double, double>> out;
    double cursor = a;
    for (const auto& [lo, hi] : iv_) {
      if (hi <= a) continue;
      if (lo >= b) break;
      if (lo > cursor) out.emplace_back(cursor, std::min(lo, b));
      cursor = std::max(cursor, hi);
      if (cursor >= b) break;
    }
    if (cursor < b) out.emplace_back(cursor, b);
    return IntervalSet(std::move(out));
  }

private:
  void rebuild_prefix() {
    prefix_.assign(iv_.size() + 1, 0.0);
    starts_.resize(iv_.size());
    ends_.resize(iv_.size());
    for (std::size_t i = 0; i < iv_.size(); ++i) {
      prefix_[i + 1] = prefix_[i] + (iv_[i].second - iv_[i].first);
      starts_[i] = iv_[i].first;
      ends_[i] = iv_[i].second;
    }
  }

  std::vector<std::pair<double, double>> iv_;
  std::vector<double> prefix_, starts_, ends_;
};

// [k*p, k*p + delta*p] for all integers k, clipped to [-W, W].
inline IntervalSet periodic_set(double period, double delta, double W) {
  if (!(period > 0) || !(delta > 0) || !(delta <= 1) || !(W > 0))
    throw std::invalid_argument("periodic_set: need period, W > 0 and delta in (0,1]");
  std::vector<std::pair<double, double>> iv;
  const long k0 = static_cast<long>(std::floor(-W / period)) - 1;
  const long k1 = static_cast<long>(std::ceil(W / period)) + 1;
  for (long k = k0; k <= k1; ++k) {
    const double a = static_cast<double>(k) * period;
    const double b = a + delta * period;
    if (b < -W || a > W) continue;
    iv.emplace_back(std::max(a, -W), std::min(b, W));
  }
  return IntervalSet(std::move(iv));
}

// Intervals of radius r at integer multiples of the spacing q, clipped to [-W, W].
inline IntervalSet ball_set(double spacing, double radius, double W) {
  if (!(spacing > 0) || !(radius > 0) || !(W > 0))
    throw std::invalid_argument("ball_set: need spacing, radius, W > 0");
  std::vector<std::pair<double, double>> iv;
  const long k0 = static_cast<long>(std::floor((-W - radius) / spacing)) - 1;
  const long k1 = static_cast<long>(std::ceil((W + radius) / spacing)) + 1;
  for (long k = k0; k <= k1; ++k) {
    const double c = static_cast<double>(k) * spacing;
    if (c + radius < -W || c - radius > W) continue;
    iv.emplace_back(std::max(c - radius, -W), std::min(c + radius, W));
  }
  return IntervalSet(std::move(iv));
}

// Balls [j - r_j, j + r_j] at every integer j, radii r_j = 2^{-(1+|j|^tau)}
// shrinking with distance, clipped to [-W, W].
inline IntervalSet graded_ball_set(double tau, double W) {
  if (!(tau >= 0) || !(W > 0))
    throw std::invalid_argument("graded_ball_set: need tau >= 0, W > 0");
  std::vector<std::pair<double, double>> iv;
  const long j1 = static_cast<long>(std::ceil(W)) + 1;
  for (long j = -j1; j <= j1; ++j) {
    const double aj = std::fabs(static_cast<double>(j));
    const double r = std::exp2(-(1.0 + std::pow(aj, tau)));
    const double c = static_cast<double>(j);
    if (c + r < -W || c - r > W) continue;
    iv.emplace_back(std::max(c - r, -W), std::min(c + r, W));
  }
  return IntervalSet(std::move(iv));
}

// Per-node quadrature weights w_i = |set ∩ [x_i - h/2, x_i + h/2] ∩ [-L, L]|.
inline std::vector<double> cell_weights(const Grid1D& g, const IntervalSet& s) {
  std::vector<double> w(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    const double xi = g.x(i);
    const double a = std::max(xi - 0.5 * g.h, -g.L);
    const double b = std::min(xi + 0.5 * g.h, g.L);
    w[static_cast<std::size_t>(i)] = (b > a) ? s.measure_within(a, b) : 0.0;
  }
  return w;
}

}  // namespace speclab
