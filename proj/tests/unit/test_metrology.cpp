#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wormhole/errors.hpp"
#include "wormhole/fock.hpp"
#include "wormhole/gaussian.hpp"
#include "wormhole/metrology.hpp"

using namespace wormhole;
using doctest::Approx;

TEST_CASE("qfi_pure_gaussian") {
  CHECK(qfi_pure_gaussian(2.0, 0.0) == Approx(16.0).epsilon(1e-15));
  CHECK(qfi_pure_gaussian(0.0, 1.0) == Approx(26.308232836016487).epsilon(1e-12));
  CHECK(qfi_pure_gaussian(1.0, 0.5) == Approx(4.2337134557694007).epsilon(1e-12));
  // Equals four times the oracle's number variance.
  const auto m = fock::fock_moments(fock::build_adequate(0.0, 1.0, 256));
  CHECK(qfi_pure_gaussian(0.0, 1.0) == Approx(4.0 * m.var_n).epsilon(1e-6));
}

TEST_CASE("qfi_coherent") {
  CHECK(qfi_coherent(0.0) == 0.0);
  CHECK(qfi_coherent(1e22) == 4e22);
  CHECK(qfi_coherent(100.0) == 400.0);
  CHECK_THROWS_AS(qfi_coherent(-1.0), std::invalid_argument);
}

TEST_CASE("fi_homodyne") {
  CHECK(fi_homodyne(10.0, 0.0) == 400.0);
  CHECK(fi_homodyne(10.0, std::numbers::pi / 2) == Approx(0.0).scale(1.0));
  CHECK(fi_homodyne(10.0, std::numbers::pi / 3) == Approx(100.0).epsilon(1e-14));
}

TEST_CASE("cramer_rao") {
  CHECK(cramer_rao(4.0) == 0.5);
  CHECK(cramer_rao(4e22) == Approx(5e-12).epsilon(1e-15));
  CHECK(cramer_rao(400.0, 10000) == Approx(5e-4).epsilon(1e-15));
  CHECK_THROWS_AS(cramer_rao(0.0), std::invalid_argument);
  CHECK_THROWS_AS(cramer_rao(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(cramer_rao(1.0, 0), std::invalid_argument);
}

TEST_CASE("fi_numerical reproduces the closed forms") {
  CHECK(fi_numerical({10.0, 0.0, 0.0, 1.0}, 0.0) == Approx(400.0).epsilon(1e-4));
  CHECK(std::abs(fi_numerical({10.0, 0.0, 0.0, 1.0}, 0.0) - 400.0) <= 0.04);
  CHECK(std::abs(fi_numerical({10.0, 0.0, 0.0, 0.62}, 0.0) - 248.0) <= 0.03);
  CHECK(std::abs(fi_numerical({10.0, 0.0, 1.0, 1.0}, 0.0) - 400.0 / 3.0) <= 0.02);
  CHECK_THROWS_AS(fi_numerical({1.0, 0.0, 0.0, 1.0}, 0.0, 1e-7), std::invalid_argument);
  CHECK_THROWS_AS(fi_numerical({1.0, 0.0, 0.0, 1.0}, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("fi_numerical on squeezed probes includes the variance term") {
  // Independent oracle: Gaussian FI mu'^2/s2 + s2'^2/(2 s2^2) with analytic
  // derivatives of the rotated moments.
  const double alpha = 1.5;
  const double r = 0.4;
  const double theta = 0.3;
  const double vx = std::exp(-2.0 * r) / 2.0;
  const double vp = std::exp(2.0 * r) / 2.0;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double mu_prime = -std::numbers::sqrt2 * alpha * c;
  const double s2 = s * s * vx + c * c * vp;
  const double s2_prime = 2.0 * s * c * (vx - vp);
  const double expected = mu_prime * mu_prime / s2 + s2_prime * s2_prime / (2.0 * s2 * s2);
  CHECK(fi_numerical({alpha, r, 0.0, 1.0}, theta) == Approx(expected).epsilon(1e-6));
}

TEST_CASE("reparametrize_fisher") {
  CHECK(reparametrize_fisher(4e22, 0.0) == 0.0);
  CHECK(reparametrize_fisher(1.0, -3.0) == 9.0);
}

TEST_CASE("fold_phase") {
  CHECK(fold_phase(0.0) == 0.0);
  CHECK(fold_phase(3.0 * std::numbers::pi + 0.1) == Approx(0.1).epsilon(1e-12));
  CHECK(fold_phase(-2.0 * std::numbers::pi - 0.2) == Approx(-0.2).epsilon(1e-12));
}

TEST_CASE("mc_estimation_experiment") {
  SUBCASE("saturates the bound at theta = 0") {
    const auto rep = mc_estimation_experiment({10.0, 0.0, 0.0, 1.0}, 0.0, 10000, 1000, 7);
    CHECK(rep.crb == Approx(1.0 / (10000.0 * 400.0)).epsilon(1e-14));
    CHECK(rep.ratio >= 0.9);
    CHECK(rep.ratio <= 1.1);
    CHECK(std::abs(rep.estimator_mean) <= 5.0 * std::sqrt(rep.crb / 1000.0));
    CHECK(rep.clamp_count == 0);
  }
  SUBCASE("bound degrades as cos^2 theta away from the optimum") {
    const double theta = 1.2;
    const auto rep = mc_estimation_experiment({10.0, 0.0, 0.0, 1.0}, theta, 10000, 1000, 7);
    CHECK(rep.crb == Approx(1.0 / (10000.0 * fi_homodyne(10.0, theta))).epsilon(1e-12));
    CHECK(rep.ratio >= 0.9);
    CHECK(rep.ratio <= 1.2);
  }
  SUBCASE("report is independent of the thread count") {
    const ProbeSpec probe{5.0, 0.0, 0.0, 0.8};
    const auto a = mc_estimation_experiment(probe, 0.2, 500, 64, 11, 1);
    const auto b = mc_estimation_experiment(probe, 0.2, 500, 64, 11, 4);
    CHECK(a.estimator_variance == b.estimator_variance);
    CHECK(a.estimator_mean == b.estimator_mean);
  }
  SUBCASE("preconditions") {
    const ProbeSpec probe{10.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(mc_estimation_experiment(probe, 0.0, 10000, 1, 7), std::invalid_argument);
    CHECK_THROWS_AS(mc_estimation_experiment(probe, 1.6, 100, 10, 7), std::invalid_argument);
    CHECK_THROWS_AS(mc_estimation_experiment({0.1, 0.0, 0.0, 1.0}, 0.0, 100, 10, 7), std::invalid_argument);
    CHECK_THROWS_AS(mc_estimation_experiment({1.0, 0.3, 0.0, 1.0}, 0.0, 1000, 10, 7), std::invalid_argument);
  }
}

TEST_CASE("property: homodyne FI never exceeds the coherent QFI") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> a(0.0, 20.0);
  std::uniform_real_distribution<double> t(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double alpha = a(rng);
    const double theta = t(rng);
    CHECK(fi_homodyne(alpha, theta) <= qfi_coherent(alpha * alpha) * (1.0 + 1e-15));
  }
  for (int m = -3; m <= 3; ++m) {
    CHECK(fi_homodyne(4.0, m * std::numbers::pi) == Approx(qfi_coherent(16.0)).epsilon(1e-14));
  }
  for (double alpha : {0.0, 0.5, 3.0, 17.0}) CHECK(qfi_pure_gaussian(alpha, 0.0) == qfi_coherent(alpha * alpha));
}

TEST_CASE("property: squeezed vacuum maximizes the QFI at fixed photon number") {
  for (double n : {0.5, 1.0, 4.0, 20.0}) {
    const double best = qfi_pure_gaussian(0.0, std::asinh(std::sqrt(n)));
    for (int k = 1; k <= 20; ++k) {
      const double alpha2 = n * k / 20.0;
      const double r = std::asinh(std::sqrt(n - alpha2));
      CHECK(qfi_pure_gaussian(std::sqrt(alpha2), r) <= best);
    }
  }
}

TEST_CASE("property: fi_numerical agrees with the closed form across the probe lattice") {
  for (double alpha : {1.0, 10.0}) {
    for (double eta : {1.0, 0.62, 0.3}) {
      for (double n_T : {0.0, 0.5, 1.0}) {
        for (double theta : {0.0, 0.3, 0.6, 1.2, -0.9}) {
          const ProbeSpec probe{alpha, 0.0, n_T, eta};
          CHECK(fi_numerical(probe, theta) == Approx(fi_homodyne_noisy(probe, theta)).epsilon(1e-4));
        }
      }
    }
  }
}

TEST_CASE("property: estimator variance approaches the bound as M grows") {
  const ProbeSpec probe{1.0, 0.0, 0.0, 1.0};
  const int trials = 600;
  // Sampling error of a variance estimate from `trials` draws.
  const double stat = 5.0 * std::sqrt(2.0 / (trials - 1));
  for (int m : {1000, 10000, 100000}) {
    const auto rep = mc_estimation_experiment(probe, 0.0, m, trials, 99, 4);
    CAPTURE(m);
    CHECK(std::abs(rep.ratio - 1.0) <= stat);
  }
}
