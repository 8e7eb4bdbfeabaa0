#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wormhole/errors.hpp"
#include "wormhole/fock.hpp"

using namespace wormhole;
using namespace wormhole::fock;
using doctest::Approx;

TEST_CASE("vacuum is |0>") {
  const auto v = build_displaced_squeezed(0.0, 0.0, 16);
  CHECK(std::abs(v.amps[0] - std::complex<double>(1.0, 0.0)) <= 1e-15);
  for (int n = 1; n < v.dim(); ++n) CHECK(std::abs(v.amps[static_cast<std::size_t>(n)]) == 0.0);
}

TEST_CASE("coherent state has Poisson weights") {
  const auto c = build_displaced_squeezed(1.0, 0.0, 64);
  double factorial = 1.0;
  double worst = 0.0;
  for (int n = 0; n < c.dim(); ++n) {
    if (n > 0) factorial *= n;
    const double poisson = std::exp(-1.0) / factorial;
    worst = std::max(worst, std::abs(std::norm(c.amps[static_cast<std::size_t>(n)]) - poisson));
  }
  CHECK(worst <= 1e-10);
  const auto m = fock_moments(c);
  CHECK(m.mean_n == Approx(1.0).epsilon(1e-9));
  CHECK(m.var_n == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("squeezed vacuum has even parity") {
  const auto s = build_displaced_squeezed(0.0, 1.0, 256);
  for (int n = 1; n < s.dim(); n += 2) CHECK(std::abs(s.amps[static_cast<std::size_t>(n)]) <= 1e-12);
  const auto m = fock_moments(s);
  CHECK(m.mean_n == Approx(1.3810978455418157).epsilon(1e-6));
  CHECK(m.var_n == Approx(6.5770582090041217).epsilon(1e-6));
}

TEST_CASE("displaced squeezed variance") {
  const auto m = fock_moments(build_displaced_squeezed(1.0, 0.5, 128));
  CHECK(m.var_n == Approx(1.0584283639423502).epsilon(1e-6));
}

TEST_CASE("truncation gate") {
  SUBCASE("too small a basis is rejected with the measured tail") {
    try {
      build_displaced_squeezed(3.0, 0.0, 12);
      FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
      CHECK(e.tail_mass() > kMaxTailMass);
      CHECK(e.dim() == 12);
    }
  }
  SUBCASE("build_adequate grows the basis") {
    const auto s = build_adequate(3.0, 1.5, 32);
    CHECK(s.tail_mass < kMaxTailMass);
    CHECK(s.dim() > 32);
  }
  CHECK_THROWS_AS(build_displaced_squeezed(0.0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("hermite functions are orthonormal") {
  constexpr int kCount = 40;
  const double h = 0.01;
  std::vector<std::vector<double>> table;
  for (int i = 0; i <= 3000; ++i) table.push_back(hermite_functions(-15.0 + h * i, kCount));
  for (int a : {0, 1, 7, 39}) {
    for (int b : {0, 1, 7, 39}) {
      double s = 0.0;
      for (const auto& row : table) s += row[static_cast<std::size_t>(a)] * row[static_cast<std::size_t>(b)] * h;
      CHECK(s == Approx(a == b ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("fock_quadrature_pdf") {
  std::vector<double> grid;
  const double h = 0.01;
  for (int i = 0; i <= 2000; ++i) grid.push_back(-10.0 + h * i);

  SUBCASE("vacuum is N(0, 1/2)") {
    const auto pdf = fock_quadrature_pdf(build_displaced_squeezed(0.0, 0.0, 8), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double g = std::exp(-grid[i] * grid[i]) / std::sqrt(std::numbers::pi);
      CHECK(std::abs(pdf[i] - g) <= 1e-8);
    }
  }
  SUBCASE("coherent alpha = 1 after a quarter turn is N(-sqrt 2, 1/2)") {
    const auto psi = apply_phase(build_displaced_squeezed(1.0, 0.0, 64), std::numbers::pi / 2);
    const auto pdf = fock_quadrature_pdf(psi, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = grid[i] + std::numbers::sqrt2;
      CHECK(std::abs(pdf[i] - std::exp(-d * d) / std::sqrt(std::numbers::pi)) <= 1e-7);
    }
  }
  SUBCASE("squeezing r = 0.5 widens p to e^{+1}/2") {
    const auto pdf = fock_quadrature_pdf(build_displaced_squeezed(0.0, 0.5, 128), grid);
    const double var = std::exp(1.0) / 2.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double g = std::exp(-grid[i] * grid[i] / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
      CHECK(std::abs(pdf[i] - g) <= 1e-6);
    }
  }
  SUBCASE("non-negative with unit mass") {
    for (double alpha : {0.0, 1.0, 3.0}) {
      for (double r : {0.0, 0.5, 1.0}) {
        const auto pdf = fock_quadrature_pdf(apply_phase(build_adequate(alpha, r, 128), 0.3), grid);
        double mass = 0.0;
        for (std::size_t i = 0; i < pdf.size(); ++i) {
          CHECK(pdf[i] >= 0.0);
          mass += (i == 0 || i + 1 == pdf.size() ? 0.5 : 1.0) * pdf[i] * h;
        }
        CHECK(mass == Approx(1.0).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("property: normalization and oracle-vs-formula lattice") {
  for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    for (double r : {0.0, 0.25, 0.5, 1.0, 1.5}) {
      CAPTURE(alpha);
      CAPTURE(r);
      const auto s = build_adequate(alpha, r, 256);
      CHECK(std::abs(s.norm2() - 1.0) <= 1e-8);
      const auto m = fock_moments(s);
      // Closed forms written out independently of the gaussian-core module.
      const double sh = std::sinh(r);
      const double ch = std::cosh(r);
      const double mean = alpha * alpha + sh * sh;
      const double var = alpha * alpha * std::exp(-2.0 * r) + 2.0 * sh * sh * ch * ch;
      CHECK(std::abs(m.mean_n - mean) <= 1e-6 * std::max(mean, 1e-300) + 1e-14);
      CHECK(std::abs(m.var_n - var) <= 1e-6 * std::max(var, 1e-300) + 1e-14);
    }
  }
}
