#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "wormhole/spacetime.hpp"

using namespace wormhole;
using doctest::Approx;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Extended-precision oracle: direct difference of square roots.
big exact_proper_distance(double b0, double r1, double L) {
  const big b(b0);
  const big r1b(r1);
  const big r2b = r1b + big(L);
  return sqrt(r2b * r2b - b * b) - sqrt(r1b * r1b - b * b);
}

}  // namespace

TEST_CASE("proper_radial_coordinate") {
  CHECK(proper_radial_coordinate(5.0, 3.0) == 4.0);
  CHECK(proper_radial_coordinate(3.0, 3.0) == 0.0);
  CHECK_THROWS_AS(proper_radial_coordinate(2.0, 3.0), std::domain_error);

  const double r = 1e11;
  const big exact = sqrt(big(r) * big(r) - big(1));
  const double got = proper_radial_coordinate(r, 1.0);
  CHECK(std::abs(got - exact.convert_to<double>()) <= std::nextafter(r, 2 * r) - r);
  CHECK(radial_deficit(r, 1.0) == Approx(5e-12).epsilon(1e-12));
}

TEST_CASE("proper_distance") {
  CHECK(proper_distance({0.0, 5.0, 8.0, 1e-6}) == 8.0);
  CHECK(proper_distance({3.0, 3.0, 10.0, 1e-6}) == Approx(std::sqrt(160.0)).epsilon(1e-12));

  const WormholeScenario sc{1.0, 1e3, 100.0, 1e-6};
  const double excess = proper_distance(sc) - sc.L;
  const double exact = (exact_proper_distance(1.0, 1e3, 100.0) - big(100.0)).convert_to<double>();
  CHECK(excess == Approx(exact).epsilon(1e-9));
  const double leading = 1.0 * 100.0 / (2.0 * 1e3 * 1.1e3);
  CHECK(leading == Approx(4.545e-5).epsilon(1e-3));
  CHECK(std::abs(leading - exact) <= 1e-3 * exact);
}

TEST_CASE("flat_phase") {
  const auto ligo = flat_phase(1e3, 1e-6);
  CHECK(ligo.theta_f == Approx(2.0 * std::numbers::pi * 1e9).epsilon(1e-15));
  CHECK(ligo.m == 2e9);
  CHECK(ligo.on_operating_point);

  const auto one = flat_phase(1e-6, 1e-6);
  CHECK(one.theta_f == Approx(2.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(one.on_operating_point);

  const auto off = flat_phase(1.25e-6, 1e-6);
  CHECK(off.m == Approx(2.5));
  CHECK_FALSE(off.on_operating_point);
}

TEST_CASE("wormhole_phase") {
  SUBCASE("no throat, no correction") {
    const auto p = wormhole_phase({0.0, 1e9, 1e3, 1e-6});
    CHECK(p.delta == 0.0);
    CHECK(p.theta == p.theta_f);
  }
  SUBCASE("correction term") {
    const auto p = wormhole_phase({1e6, 1e9, 1e3, 1e-6});
    CHECK(p.delta == Approx(std::numbers::pi * 1e-3).epsilon(1e-12));
    CHECK(p.theta_f - p.theta == Approx(p.delta).epsilon(1e-6));
  }
  SUBCASE("detectable scale") {
    CHECK(detectable_throat_scale(1e-10, 1e3, 1e-6) == Approx(1e-22).epsilon(1e-12));
    // A throat with exactly that scale reproduces the phase.
    const double r1 = 1e9;
    const double b0 = std::sqrt(1e-22 * r1 * r1 * r1 / std::numbers::pi);
    CHECK(wormhole_phase({b0, r1, 1e3, 1e-6}).delta == Approx(1e-10).epsilon(1e-12));
  }
  SUBCASE("regime enforcement") {
    const WormholeScenario bad{0.5, 1.0, 1e-3, 1e-6};
    try {
      wormhole_phase(bad);
      FAIL("expected RegimeError");
    } catch (const RegimeError& e) {
      CHECK_FALSE(e.report().ok);
      CHECK(e.report().violations.at(0) == "b0/r1");
    }
    CHECK_NOTHROW(wormhole_phase(bad, {true, {}}));
  }
}

TEST_CASE("naive proper-length phase disagrees with the corrected phase") {
  const WormholeScenario sc{1e6, 1e9, 1e3, 1e-6};
  const auto naive = naive_proper_length_phase(sc);
  const auto corrected = wormhole_phase(sc);
  // Opposite sign and a different order in L / r1.
  CHECK(naive.delta < 0.0);
  CHECK(corrected.delta > 0.0);
}

TEST_CASE("metric_perturbation") {
  CHECK(metric_perturbation(1.0, 0.0).g_rr == 0.0);
  CHECK(metric_perturbation(1e11, 1.0).g_rr == Approx(1e-22).epsilon(1e-15));
  CHECK(metric_perturbation(1e5, 1.0).g_rr == Approx(1e-10).epsilon(1e-15));
  CHECK_FALSE(metric_perturbation(1e5, 1.0).strained);
  CHECK(metric_perturbation(5.0, 1.0).strained);
}

TEST_CASE("dtheta_db0") {
  CHECK(dtheta_db0({0.0, 1e11, 1e9, 1e-6}) == 0.0);
  const WormholeScenario sc{1.0, 1e11, 1e9, 1e-6};
  const double expected = -2.0 * std::numbers::pi * 1e18 * 1.0 / (1e-6 * 1e33);
  CHECK(dtheta_db0(sc) == Approx(expected).epsilon(1e-14));
  WormholeScenario doubled = sc;
  doubled.b0 = 2.0;
  CHECK(dtheta_db0(doubled) == Approx(2.0 * dtheta_db0(sc)).epsilon(1e-15));
}

TEST_CASE("regime_check") {
  const auto fig2 = regime_check({1.0, 1e11, 1e9, 1e-6});
  CHECK(fig2.ok);
  CHECK(fig2.worst_name == "L/r1");
  CHECK(fig2.worst_value == Approx(1e-2));
  CHECK_FALSE(regime_check({0.5, 1.0, 1e-3, 1e-6}).ok);
  CHECK_FALSE(regime_check({1.0, 1e11, 1e-6, 1e-6}).ok);
}

TEST_CASE("property: proper length excess") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double r1 = std::pow(10.0, 3.0 + 9.0 * u(rng));
    const double b0 = r1 * std::pow(10.0, -3.0 - 4.0 * u(rng));
    const double L = r1 * std::pow(10.0, -2.0 - 4.0 * u(rng));
    const WormholeScenario sc{b0, r1, L, 1e-9 * L};

    const double lp = proper_distance(sc);
    CHECK(lp >= L);
    // Monotone in r2.
    WormholeScenario longer = sc;
    longer.L *= 1.5;
    CHECK(proper_distance(longer) > lp);

    // (L' - L)/L against b0^2 / (2 r1 r2), exact in extended precision.
    const big exact = (exact_proper_distance(b0, r1, L) - big(L)) / big(L);
    const double leading = b0 * b0 / (2.0 * r1 * sc.r2());
    CHECK(std::abs(leading - exact.convert_to<double>()) <= 1e-2 * exact.convert_to<double>());
    const double exact_lp = exact_proper_distance(b0, r1, L).convert_to<double>();
    CHECK(std::abs(lp - exact_lp) <= 4.0 * (std::nextafter(L, 2.0 * L) - L));
  }
  CHECK(proper_distance({0.0, 1e5, 10.0, 1e-6}) == 10.0);
}

TEST_CASE("property: phase bookkeeping and derivative") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double r1 = std::pow(10.0, 4.0 + 8.0 * u(rng));
    const WormholeScenario sc{r1 * std::pow(10.0, -2.0 - 9.0 * u(rng)), r1,
                              r1 * std::pow(10.0, -2.0 - 6.0 * u(rng)), 1e-6};
    const auto p = wormhole_phase(sc);
    // theta is assembled from delta, never recovered by subtracting phases.
    CHECK(p.theta == p.theta_f - p.delta);
    CHECK(p.delta == Approx(std::numbers::pi * sc.L * sc.L * sc.b0 * sc.b0 / (sc.lambda * r1 * r1 * r1)).epsilon(1e-12));
    CHECK(metric_perturbation(sc.r1, sc.b0).g_rr == (sc.b0 / sc.r1) * (sc.b0 / sc.r1));

    // Central difference of delta in b0 (theta_f is independent of b0).
    const double h = 1e-3 * sc.b0;
    WormholeScenario up = sc;
    WormholeScenario down = sc;
    up.b0 += h;
    down.b0 -= h;
    const double fd = -(wormhole_phase(up).delta - wormhole_phase(down).delta) / (2.0 * h);
    CHECK(dtheta_db0(sc) == Approx(fd).epsilon(1e-6));
  }
}
