#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wormhole/spacetime.hpp"

namespace wormhole {

/// How optical efficiency eta and thermal occupation n_T enter the figure of merit.
enum class NoiseModel {
  /// Multiply by eta / (1 + 2 n_T).
  AsPrinted,
  /// Multiply by sqrt((1 + 2 n_T) / eta), the scaling implied by F -> eta F / (1 + 2 n_T).
  FisherDerived,
};

enum class Information {
  Qfi,          ///< 1 / sqrt(<n>)
  HomodyneFi,   ///< 1 / sqrt(<n> cos theta)
};

/// Whether n_photons is a per-second rate (result in Hz^-1/2) or a total count.
enum class PhotonBudget { PerSecond, Total };

std::string_view to_string(NoiseModel m);
std::string_view to_string(Information i);
NoiseModel parse_noise_model(std::string_view s);
Information parse_information(std::string_view s);

struct SensitivityInput {
  WormholeScenario scenario;
  double n_photons = 1e22;
  double eta = 1.0;
  double n_T = 0.0;
  NoiseModel noise_model = NoiseModel::AsPrinted;
  Information information = Information::Qfi;
  PhotonBudget budget = PhotonBudget::PerSecond;
  PhaseOptions phase{};

  void validate() const;
};

/// "Hz^-1/2" for per-second photon budgets, "1" otherwise.
std::string_view sensitivity_unit(const SensitivityInput& input);

/// Relative throat-radius uncertainty Delta b0 / b0:
///   (lambda / 4 pi L) (r1 / b0)^2 (r1 / L) / sqrt(<n>),
/// divided by sqrt(|cos theta|) for the homodyne variant, times the noise factor.
/// cos theta is evaluated on the phase residual after removing multiples of pi.
double relative_sensitivity(const SensitivityInput& input);

/// Same quantity assembled from H(b0) = |d theta / d b0|^2 H(theta) with
/// H(theta) = 4 <n> eta / (1 + 2 n_T). Throws NoSignalError when b0 = 0.
double sensitivity_via_chain_rule(const SensitivityInput& input);

enum class SweepAxis { NPhotons, L, R1OverB0, Eta, NT };

std::string_view to_string(SweepAxis a);
SweepAxis parse_sweep_axis(std::string_view s);

/// Returns a copy of `base` with the swept quantity set to `value`. Sweeping L
/// keeps r1/L and r1/b0 fixed; sweeping r1/b0 keeps r1 and L fixed.
SensitivityInput with_axis_value(const SensitivityInput& base, SweepAxis axis, double value);

struct CurveData {
  std::string axis_name;
  std::vector<double> axis_values;
  /// Per-point values; empty optionals mark points whose evaluation failed.
  std::vector<std::optional<double>> qfi_values;
  std::vector<std::optional<double>> fi_values;
  std::vector<std::string> failures;
  SensitivityInput metadata;
};

/// Pointwise relative_sensitivity for both information variants. Per-point
/// errors are collected in `failures`, not thrown.
CurveData sweep(const SensitivityInput& input, SweepAxis axis, const std::vector<double>& values);

struct ThresholdResult {
  double ratio = 0.0;        ///< largest r1 / b0 meeting the tolerance
  double b0_min = 0.0;       ///< r1 / ratio
  double sensitivity = 0.0;  ///< relative_sensitivity at the returned ratio
  bool closed_form = false;
};

/// Solves relative_sensitivity = tolerance for r1/b0 with r1, L and lambda held
/// fixed. Throws RegimeError when even the smallest admissible ratio misses the
/// tolerance.
ThresholdResult max_distance_ratio(const SensitivityInput& input, double tolerance);

/// r1 at which a throat of radius b0 produces the phase correction delta_theta_min:
/// (pi L^2 b0^2 / (lambda delta_theta_min))^(1/3).
double mimicker_distance(double b0, double delta_theta_min, double L, double lambda);

inline constexpr double kMetersPerParsec = 3.0857e16;

}  // namespace wormhole
