#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace wormhole {

// Quadrature convention used throughout the library:
//   x = (a + a^dagger) / sqrt(2),   p = (a - a^dagger) / (i sqrt(2)),
// so the vacuum has Var(x) = Var(p) = 1/2 (hbar = 1).
//
// The phase channel U(theta) = exp(-i theta a^dagger a) maps a -> a e^{-i theta},
// which acts on (x, p) as
//   [ x' ]   [  cos(theta)  sin(theta) ] [ x ]
//   [ p' ] = [ -sin(theta)  cos(theta) ] [ p ]
// A real coherent amplitude alpha > 0 therefore acquires <p> = -sqrt(2) alpha sin(theta).

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Single-mode Gaussian state: first moments and symmetrized covariance matrix.
class GaussianState {
 public:
  /// Validates symmetry, positive variances and the uncertainty relation.
  GaussianState(Vec2 mean, Mat2 cov);

  static GaussianState vacuum();

  const Vec2& mean() const noexcept { return mean_; }
  const Mat2& cov() const noexcept { return cov_; }
  double det() const noexcept;

  /// det(cov) == 1/4 within `tol`.
  bool is_pure(double tol = 1e-9) const noexcept;

 private:
  Vec2 mean_;
  Mat2 cov_;
};

/// Probe parameters: displacement alpha (real, >= 0 in practice), squeezing r,
/// thermal occupation n_T of the undisplaced state and optical efficiency eta.
struct ProbeSpec {
  double alpha = 0.0;
  double r = 0.0;
  double n_T = 0.0;
  double eta = 1.0;

  /// Throws std::invalid_argument unless n_T >= 0, 0 < eta <= 1, alpha and r finite.
  void validate() const;
};

/// Outcome distribution of a p-quadrature homodyne measurement: N(mu, sigma2).
struct HomodyneDensity {
  double mu = 0.0;
  double sigma2 = 0.5;

  double pdf(double p) const;
};

GaussianState coherent_state(double alpha);

/// D(alpha) S(r) applied to a thermal state with occupation n_T. Loss (eta) is
/// validated but not applied here; see prepare_probe.
GaussianState displaced_squeezed_thermal(const ProbeSpec& spec);

GaussianState apply_phase_shift(const GaussianState& state, double theta);

/// Pure-loss channel of transmissivity eta (beam splitter with vacuum).
GaussianState apply_loss(const GaussianState& state, double eta);

/// Preparation, loss and phase encoding in one step:
/// U(theta) L_eta D(alpha) S(r) rho_th.
GaussianState prepare_probe(const ProbeSpec& spec, double theta);

double mean_photon_number(const GaussianState& state);

/// Var(a^dagger a) = tr(V^2)/2 + d^T V d - 1/4 for mean d and covariance V.
double photon_number_variance(const GaussianState& state);

HomodyneDensity homodyne_p_density(const GaussianState& state);

/// `count` draws of the p-quadrature outcome. Deterministic for a fixed seed on a
/// given standard library; not bit-exact across platforms.
std::vector<double> sample_homodyne(const GaussianState& state, std::size_t count,
                                    std::uint64_t seed);

}  // namespace wormhole
