#pragma once

#include <cstddef>
#include <cstdint>

#include "wormhole/gaussian.hpp"

namespace wormhole {

/// Summary of a repeated homodyne phase-estimation experiment.
struct EstimationReport {
  double theta_true = 0.0;
  int trials = 0;
  int samples_per_trial = 0;
  double estimator_mean = 0.0;
  /// Unbiased sample variance of the per-trial estimates.
  double estimator_variance = 0.0;
  /// Cramer-Rao variance bound 1 / (M F).
  double crb = 0.0;
  double ratio = 0.0;
  /// Trials whose arcsin argument had to be clamped into [-1, 1].
  int clamp_count = 0;
  std::uint64_t seed = 0;
};

/// QFI of the pure state D(alpha)S(r)|0> under the number generator:
/// 4 [alpha^2 e^{-2r} + 2 sinh^2 r cosh^2 r].
double qfi_pure_gaussian(double alpha, double r);

/// 4 <n> for a coherent probe.
double qfi_coherent(double n_mean);

/// p-quadrature homodyne Fisher information of a pure coherent probe: 4 alpha^2 cos^2 theta.
double fi_homodyne(double alpha, double theta);

/// Standard-deviation bound 1 / sqrt(repetitions * fisher).
double cramer_rao(double fisher, long long repetitions = 1);

/// Fisher information of the homodyne density of prepare_probe(probe, theta),
/// from central differences of mu(theta) and sigma^2(theta) (step dtheta) and
/// trapezoid quadrature of the squared score over +-12 sigma.
double fi_numerical(const ProbeSpec& probe, double theta, double dtheta = 1e-4);

/// Closed-form homodyne FI of a lossy displaced thermal coherent probe:
/// 4 eta alpha^2 cos^2 theta / (1 + 2 eta n_T).
double fi_homodyne_noisy(const ProbeSpec& probe, double theta);

/// H(b0) = |d theta / d b0|^2 H(theta).
double reparametrize_fisher(double fisher_theta, double dtheta_dparam);

/// Residual of theta after removing the nearest multiple of pi, in [-pi/2, pi/2].
double fold_phase(double theta);

/// Repeats `trials` homodyne experiments of `samples_per_trial` shots each on a
/// coherent probe (r = 0) and estimates theta by inverting the mean of the
/// p-quadrature. Trial k draws from its own seed derived from (seed, k), so
/// the report does not depend on `threads`.
EstimationReport mc_estimation_experiment(const ProbeSpec& probe, double theta_true,
                                          int samples_per_trial, int trials, std::uint64_t seed,
                                          int threads = 1);

}  // namespace wormhole
