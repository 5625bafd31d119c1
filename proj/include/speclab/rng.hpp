#pragma once
#include <cstdint>
#include <cmath>
#include <random>

namespace speclab {

// Deterministic random stream. Variates are derived from raw mt19937_64
// bits (53-bit mantissa mapping) so that identical seeds give identical
// streams regardless of how the standard library implements distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // uniform integer in [0, m)
  std::uint64_t index(std::uint64_t m) { return eng_() % m; }

  // standard normal (Box-Muller, both variates consumed in order)
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace speclab
