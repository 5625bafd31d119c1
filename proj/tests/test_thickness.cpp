#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "speclab/interval_set.hpp"
#include "speclab/rng.hpp"
#include "speclab/thickness.hpp"

using namespace speclab;

TEST_CASE("graded partition points", "[thickness]") {
  // s = 0: equispaced
  const auto eq = partition_points(2.0, 0.0, 3);
  REQUIRE(eq.size() == 4);
  CHECK(eq[0] == 0.0);
  CHECK(eq[1] == 2.0);
  CHECK(eq[2] == 4.0);
  CHECK(eq[3] == 6.0);
  // s = 1/2: x_n = n^2
  const auto sq = partition_points(1.0, 0.5, 4);
  CHECK(sq[2] == Catch::Approx(4.0));
  CHECK(sq[3] == Catch::Approx(9.0));
  CHECK(sq[4] == Catch::Approx(16.0));
  // s = -1: x_n = sqrt(n), cells shrink with distance
  const auto sh = partition_points(1.0, -1.0, 4);
  CHECK(sh[2] == Catch::Approx(std::sqrt(2.0)));
  CHECK(sh[3] == Catch::Approx(std::sqrt(3.0)));
  CHECK(sh[4] == Catch::Approx(2.0));
  CHECK_THROWS_AS(partition_points(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(partition_points(0.0, 0.0, 4), std::invalid_argument);
}

TEST_CASE("parameter validation", "[thickness]") {
  CHECK_THROWS_AS(validate(ThicknessParams{0.0, 0.0, 0.6, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ThicknessParams{0.0, 0.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ThicknessParams{2.0, 0.0, 0.25, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ThicknessParams{0.0, -1.0, 0.25, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ThicknessParams{0.0, 0.0, 0.25, 0.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(ThicknessParams{1.0, 0.0, 0.25, 1.0}));  // s = 1 allowed directly
  CHECK_THROWS_AS(validate(PartitionParams{0.0, 0.0, 0.0, 0.25}), std::invalid_argument);
  CHECK_THROWS_AS(validate(PartitionParams{1.0, 1.0, 0.0, 0.25}), std::invalid_argument);
  CHECK_THROWS_AS(validate(PartitionParams{1.0, 0.0, 0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("direct density check on the periodic example", "[thickness]") {
  // A quarter-density periodic set: every window of length 2p holds exactly
  // 2*delta*p of mass, so gamma = delta/2 leaves margin delta*p.
  const double p = 1.0, delta = 0.25, W = 8.0;
  const IntervalSet set = periodic_set(p, delta, W);
  const ThicknessParams tp{0.0, 0.0, 0.5 * delta, p};
  const ThicknessReport rep = is_thick_direct(set, tp, W, 0.0625);
  CHECK(rep.ok);
  CHECK(rep.checks > 0);
  CHECK(rep.worst_margin == Catch::Approx(delta * p).margin(1e-12));
  // raising the density demand past the actual quarter density flips the verdict
  const ThicknessParams bad{0.0, 0.0, 0.45, p};
  const ThicknessReport neg = is_thick_direct(set, bad, W, 0.0625);
  CHECK_FALSE(neg.ok);
  CHECK(neg.worst_margin < 0.0);
  CHECK(neg.what.find("deficit") != std::string::npos);
}

TEST_CASE("direct check skips windows that stick out of the box", "[thickness]") {
  const IntervalSet set({{-0.4, 0.4}});
  const ThicknessParams tp{0.0, 0.0, 0.25, 1.0};  // radius 1 > W
  const ThicknessReport rep = is_thick_direct(set, tp, 0.5, 0.1);
  CHECK_FALSE(rep.ok);
  CHECK(rep.checks == 0);
  CHECK(rep.what.find("no admissible centers") != std::string::npos);
}

TEST_CASE("cell recipe certifies the periodic example", "[thickness]") {
  const double p = 1.0, delta = 0.25, W = 8.0;
  const IntervalSet set = periodic_set(p, delta, W);
  const PartitionParams q = partition_from_direct(ThicknessParams{0.0, 0.0, 0.5 * delta, p});
  CHECK(q.a == Catch::Approx(2.0));  // equispaced cells of twice the window radius
  const ThicknessReport rep = is_thick_partition(set, q, W);  // W = 4 whole cells
  CHECK(rep.ok);
  CHECK(rep.worst_margin > 0.0);
  // the cell recipe rejects s = 1 (window criteria handle that regime)
  CHECK_THROWS_AS(partition_from_direct(ThicknessParams{1.0, 0.0, 0.25, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("cell check flags a starved cell", "[thickness]") {
  // mass only near the origin: distant cells are empty
  const IntervalSet set({{-1.0, 1.0}});
  PartitionParams q;
  q.a = 2.0;
  q.gamma1 = 0.25;
  const ThicknessReport rep = is_thick_partition(set, q, 8.0);
  CHECK_FALSE(rep.ok);
  CHECK(rep.worst_margin < 0.0);
  CHECK(rep.what.find("cell deficit") != std::string::npos);
}

TEST_CASE("recipes round-trip on randomly generated cell-thick sets", "[thickness]") {
  Rng rng(424242);
  const double W = 40.0;
  for (int t = 0; t < 5; ++t) {
    PartitionParams p;
    p.a = rng.uniform(1.0, 3.0);
    p.s = (t % 2 == 0) ? 0.0 : -0.5;
    p.tau = rng.uniform(0.0, 0.5);
    p.gamma1 = rng.uniform(0.05, 0.3);
    const IntervalSet set = random_thick_set(p, W, rng, 1.5);
    INFO("a=" << p.a << " s=" << p.s << " tau=" << p.tau << " gamma1=" << p.gamma1);
    CHECK(is_thick_partition(set, p, W).ok);
    const ThicknessParams d = direct_from_partition(p);
    CHECK(d.gamma > 0.0);
    CHECK(d.gamma < 0.5);
    CHECK(is_thick_direct(set, d, W, p.a / 8.0).ok);
  }
}

TEST_CASE("randomized periodic sets are quarter-density thick", "[thickness]") {
  for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
    Rng rng(seed);
    const double p = 1.5, delta = 0.3, W = 30.0;
    const IntervalSet set = random_thick_periodic(p, delta, W, rng);
    // one block of length delta*p per period: any window of length 2p holds
    // at least one full block, so gamma = delta/4 must pass
    const ThicknessParams tp{0.0, 0.0, 0.25 * delta, p};
    INFO("seed=" << seed);
    CHECK(is_thick_direct(set, tp, W, 0.1).ok);
    CHECK(set.measure() > 0.0);
  }
}

TEST_CASE("window criterion for the critical scaling", "[thickness]") {
  const double W = 8.0;
  const IntervalSet set = periodic_set(1.0, 0.25, W);
  // |set ∩ (-n, n)| = 0.5 n exactly
  const ThicknessReport ok = is_thick_s1(set, 0.4, 1, W);
  CHECK(ok.ok);
  CHECK(ok.worst_margin == Catch::Approx(0.1).margin(1e-12));
  const ThicknessReport bad = is_thick_s1(set, 0.6, 1, W);
  CHECK_FALSE(bad.ok);
  CHECK(bad.what.find("n=1") != std::string::npos);
  CHECK_THROWS_AS(is_thick_s1(set, 1.5, 1, W), std::invalid_argument);
  CHECK_THROWS_AS(is_thick_s1(set, 0.4, 0, W), std::invalid_argument);
  // derived direct parameters at the critical exponent
  const ThicknessParams d = s1_direct_params(0.2, 1);
  CHECK(d.s == 1.0);
  CHECK(d.D == Catch::Approx(2.0));
  CHECK(d.gamma == Catch::Approx(0.025));
}

TEST_CASE("scaled-density constant from a single window mass", "[thickness]") {
  const double mu = 0.5, D = 1.0, tau = 0.5, t0 = 1.0;
  const double g = s1_tau_gamma(mu, D, tau, t0);
  REQUIRE(g > 0.0);
  REQUIRE(g < 1.0);
  // defining inequality gamma^{t^tau} * 2 D t <= mu on a t sample
  for (double t : {1.0, 2.0, 5.0, 20.0, 100.0})
    CHECK(std::pow(g, std::pow(t, tau)) * 2.0 * D * t <= mu * (1.0 + 1e-9));
  // more window mass certifies a larger constant
  CHECK(s1_tau_gamma(0.9, D, tau, t0) >= g);
  CHECK_THROWS_AS(s1_tau_gamma(0.0, D, tau, t0), std::invalid_argument);
}

TEST_CASE("geometric-times-power peak closed form", "[thickness]") {
  const PowerPeak pk = gamma_power_peak(0.5, 3.0);
  CHECK(pk.t_star == Catch::Approx(3.0 / std::log(2.0)));
  // the closed form equals the function value at the peak
  CHECK(pk.value ==
        Catch::Approx(std::pow(0.5, pk.t_star) * std::pow(pk.t_star, 3.0)).epsilon(1e-12));
  // and dominates a brute-force scan
  double brute = 0.0;
  for (double t = 0.01; t < 40.0; t += 0.01)
    brute = std::max(brute, std::pow(0.5, t) * std::pow(t, 3.0));
  CHECK(pk.value >= brute * (1.0 - 1e-9));
  CHECK(pk.value <= brute * (1.0 + 1e-3));
  CHECK_THROWS_AS(gamma_power_peak(1.5, 3.0), std::invalid_argument);
}

TEST_CASE("dilated cell overlap multiplicity", "[thickness]") {
  // undilated cells have disjoint interiors
  CHECK(dilated_cell_multiplicity(2.0, 0.0, 50, 1.0) == 1);
  CHECK(dilated_cell_multiplicity(1.0, 0.5, 50, 1.0) == 1);
  // multiplicity grows with the dilation factor and is scale invariant in a
  const int m4 = dilated_cell_multiplicity(2.0, 0.0, 200, 4.0);
  CHECK(m4 == dilated_cell_multiplicity(1.0, 0.0, 200, 4.0));
  CHECK(m4 >= dilated_cell_multiplicity(2.0, 0.0, 200, 2.0));
  CHECK(m4 <= 64);
  // graded partitions stay within the bookkeeping bound as well
  for (double s : {-0.5, 0.25, 0.5})
    CHECK(dilated_cell_multiplicity(1.5, s, 200, 4.0) <= 64);
  CHECK_THROWS_AS(dilated_cell_multiplicity(1.0, 0.0, 10, 0.5), std::invalid_argument);
}
