#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wormhole {

/// Radial propagation geometry near an Ellis wormhole, all lengths in meters.
/// The receiver sits at r2 = r1 + L.
struct WormholeScenario {
  double b0 = 0.0;      ///< throat radius
  double r1 = 1.0;      ///< emitter radial coordinate
  double L = 1.0;       ///< coordinate separation r2 - r1
  double lambda = 1.0;  ///< optical wavelength

  double r2() const noexcept { return r1 + L; }

  /// Throws std::invalid_argument unless b0 >= 0, r1 > b0, L > 0, lambda > 0.
  void validate() const;
};

/// Upper bounds for the small ratios of the quasiflat approximation. A ratio
/// equal to its bound is accepted.
struct RegimeThresholds {
  double b0_over_r1 = 1e-2;
  double L_over_r1 = 1e-2;
  double lambda_over_L = 1e-2;
};

struct RegimeReport {
  double b0_over_r1 = 0.0;
  double L_over_r1 = 0.0;
  double lambda_over_L = 0.0;
  bool ok = false;
  /// Names of the ratios above their thresholds.
  std::vector<std::string> violations;
  /// Name of the ratio closest to (or furthest beyond) its threshold.
  std::string worst_name;
  double worst_value = 0.0;

  std::string describe() const;
};

class RegimeError : public std::runtime_error {
 public:
  explicit RegimeError(RegimeReport report);
  const RegimeReport& report() const noexcept { return report_; }

 private:
  RegimeReport report_;
};

RegimeReport regime_check(const WormholeScenario& scenario, const RegimeThresholds& thresholds = {});

/// Positive branch of l = sqrt(r^2 - b0^2). Throws std::domain_error for r < b0.
double proper_radial_coordinate(double r, double b0);

/// r - sqrt(r^2 - b0^2), evaluated as b0^2 / (sqrt(r^2 - b0^2) + r).
double radial_deficit(double r, double b0);

/// |l(r2) - l(r1)|; never shorter than L.
double proper_distance(const WormholeScenario& scenario);

struct FlatPhase {
  double theta_f = 0.0;  ///< 2 pi L / lambda
  double m = 0.0;        ///< 2 L / lambda
  /// L / lambda is a positive integer within resolution, i.e. theta_f is a multiple of 2 pi.
  bool on_operating_point = false;
};

FlatPhase flat_phase(double L, double lambda);

/// Wormhole-corrected phase theta = theta_f - delta. `delta` is computed directly
/// so it survives even when delta / theta_f is far below double resolution.
struct WormholePhase {
  double theta_f = 0.0;
  double delta = 0.0;  ///< pi L^2 b0^2 / (lambda r1^3)
  double theta = 0.0;
};

struct PhaseOptions {
  bool override_regime = false;
  RegimeThresholds thresholds{};
};

WormholePhase wormhole_phase(const WormholeScenario& scenario, const PhaseOptions& options = {});

/// Phase from the exact proper length, 2 pi L' / lambda, with the wavelength left
/// unmodified. Comparison only: it does not agree with wormhole_phase.
WormholePhase naive_proper_length_phase(const WormholeScenario& scenario);

struct MetricPerturbation {
  double g_rr = 0.0;      ///< b0^2 / r1^2
  bool strained = false;  ///< g_rr >= 1e-2
};

MetricPerturbation metric_perturbation(double r1, double b0);

/// d theta / d b0 = -2 pi L^2 b0 / (lambda r1^3).
double dtheta_db0(const WormholeScenario& scenario, const PhaseOptions& options = {});

/// The combination pi b0^2 / r1^3 that produces a phase correction delta_theta
/// over separation L: delta_theta lambda / L^2.
double detectable_throat_scale(double delta_theta, double L, double lambda);

}  // namespace wormhole
