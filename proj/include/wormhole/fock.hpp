#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wormhole::fock {

/// Brute-force single-mode state in a truncated number basis |0>, ..., |dim-1>.
/// Used as an independent check of the phase-space formulas.
struct FockVector {
  std::vector<std::complex<double>> amps;
  /// Probability held by the last 10% of the basis.
  double tail_mass = 0.0;

  int dim() const noexcept { return static_cast<int>(amps.size()); }
  double norm2() const;
};

/// Accepted states must keep tail_mass below this.
inline constexpr double kMaxTailMass = 1e-10;

/// D(alpha) S(r)|0> with S(r) = exp[(r/2)(a^2 - a^dagger^2)] and real alpha.
/// The squeezed vacuum comes from its closed-form amplitude recursion; the
/// displacement is the exponential of alpha (a^dagger - a) applied by
/// sub-stepped Taylor series in a padded basis. Throws TruncationError if the
/// tail gate fails.
FockVector build_displaced_squeezed(double alpha, double r, int dim);

/// Same as build_displaced_squeezed but doubles dim (starting from `dim`) until
/// the tail gate passes, up to `max_dim`.
FockVector build_adequate(double alpha, double r, int dim = 64, int max_dim = 4096);

/// c_n -> c_n exp(-i theta n).
FockVector apply_phase(const FockVector& state, double theta);

struct Moments {
  double mean_n = 0.0;
  double var_n = 0.0;
};

Moments fock_moments(const FockVector& state);

/// Normalized harmonic-oscillator eigenfunctions phi_0..phi_{count-1} at x,
/// via the three-term recurrence on the normalized functions.
std::vector<double> hermite_functions(double x, int count);

/// |<p|psi>|^2 on `grid`, with <p|n> = (-i)^n phi_n(p).
std::vector<double> fock_quadrature_pdf(const FockVector& state, std::span<const double> grid);

}  // namespace wormhole::fock
