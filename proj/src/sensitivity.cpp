#include "wormhole/sensitivity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wormhole/errors.hpp"
#include "wormhole/metrology.hpp"

namespace wormhole {
namespace {

double noise_factor(const SensitivityInput& in) {
  switch (in.noise_model) {
    case NoiseModel::AsPrinted:
      return in.eta / (1.0 + 2.0 * in.n_T);
    case NoiseModel::FisherDerived:
      return std::sqrt((1.0 + 2.0 * in.n_T) / in.eta);
  }
  throw InternalError("unknown noise model");
}

// |cos theta| with theta = m pi - delta; the integer part of m is folded out
// before the (tiny) correction is subtracted.
double folded_cos(const WormholeScenario& sc, const WormholePhase& phase) {
  const double m = 2.0 * sc.L / sc.lambda;
  const double residual = std::numbers::pi * (m - std::round(m)) - phase.delta;
  return std::abs(std::cos(residual));
}

}  // namespace

std::string_view to_string(NoiseModel m) {
  return m == NoiseModel::AsPrinted ? "as-printed" : "fisher-derived";
}

std::string_view to_string(Information i) { return i == Information::Qfi ? "qfi" : "homodyne-fi"; }

NoiseModel parse_noise_model(std::string_view s) {
  if (s == "as-printed") return NoiseModel::AsPrinted;
  if (s == "fisher-derived") return NoiseModel::FisherDerived;
  throw std::invalid_argument("unknown noise model '" + std::string(s) +
                              "' (expected as-printed | fisher-derived)");
}

Information parse_information(std::string_view s) {
  if (s == "qfi") return Information::Qfi;
  if (s == "homodyne-fi") return Information::HomodyneFi;
  throw std::invalid_argument("unknown information variant '" + std::string(s) +
                              "' (expected qfi | homodyne-fi)");
}

std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::NPhotons: return "n_photons";
    case SweepAxis::L: return "L";
    case SweepAxis::R1OverB0: return "r1_over_b0";
    case SweepAxis::Eta: return "eta";
    case SweepAxis::NT: return "n_T";
  }
  return "?";
}

SweepAxis parse_sweep_axis(std::string_view s) {
  for (auto a : {SweepAxis::NPhotons, SweepAxis::L, SweepAxis::R1OverB0, SweepAxis::Eta, SweepAxis::NT}) {
    if (s == to_string(a)) return a;
  }
  throw std::invalid_argument("unknown sweep axis '" + std::string(s) +
                              "' (expected n_photons | L | r1_over_b0 | eta | n_T)");
}

void SensitivityInput::validate() const {
  scenario.validate();
  if (!(n_photons > 0.0) || !std::isfinite(n_photons)) {
    throw std::invalid_argument("n_photons must be finite and > 0");
  }
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  if (!(n_T >= 0.0) || !std::isfinite(n_T)) throw std::invalid_argument("n_T must be finite and >= 0");
}

std::string_view sensitivity_unit(const SensitivityInput& input) {
  return input.budget == PhotonBudget::PerSecond ? "Hz^-1/2" : "1";
}

double relative_sensitivity(const SensitivityInput& input) {
  input.validate();
  const auto& sc = input.scenario;
  const auto phase = wormhole_phase(sc, input.phase);
  if (sc.b0 == 0.0) throw NoSignalError("b0 = 0: the phase carries no first-order throat signal");

  const double ratio = sc.r1 / sc.b0;
  double value = sc.lambda / (4.0 * std::numbers::pi * sc.L) * ratio * ratio * (sc.r1 / sc.L) /
                 std::sqrt(input.n_photons);
  if (input.information == Information::HomodyneFi) {
    const double c = folded_cos(sc, phase);
    if (c == 0.0) throw NoSignalError("cos theta = 0: homodyne readout carries no phase information");
    value /= std::sqrt(c);
  }
  return value * noise_factor(input);
}

double sensitivity_via_chain_rule(const SensitivityInput& input) {
  input.validate();
  const double slope = dtheta_db0(input.scenario, input.phase);
  if (slope == 0.0) throw NoSignalError("d theta / d b0 = 0: no information about b0");
  const double fisher_theta = qfi_coherent(input.n_photons) * input.eta / (1.0 + 2.0 * input.n_T);
  const double fisher_b0 = reparametrize_fisher(fisher_theta, slope);
  return cramer_rao(fisher_b0) / input.scenario.b0;
}

SensitivityInput with_axis_value(const SensitivityInput& base, SweepAxis axis, double value) {
  SensitivityInput out = base;
  auto& sc = out.scenario;
  switch (axis) {
    case SweepAxis::NPhotons:
      out.n_photons = value;
      break;
    case SweepAxis::L: {
      const double r1_over_L = base.scenario.r1 / base.scenario.L;
      const double r1_over_b0 = base.scenario.r1 / base.scenario.b0;
      sc.L = value;
      sc.r1 = r1_over_L * value;
      sc.b0 = sc.r1 / r1_over_b0;
      break;
    }
    case SweepAxis::R1OverB0:
      if (!(value > 0.0)) throw std::invalid_argument("r1/b0 must be > 0");
      sc.b0 = sc.r1 / value;
      break;
    case SweepAxis::Eta:
      out.eta = value;
      break;
    case SweepAxis::NT:
      out.n_T = value;
      break;
  }
  return out;
}

CurveData sweep(const SensitivityInput& input, SweepAxis axis, const std::vector<double>& values) {
  CurveData curve;
  curve.axis_name = std::string(to_string(axis));
  curve.axis_values = values;
  curve.metadata = input;
  curve.qfi_values.reserve(values.size());
  curve.fi_values.reserve(values.size());
  for (double v : values) {
    std::optional<double> qfi;
    std::optional<double> fi;
    try {
      auto point = with_axis_value(input, axis, v);
      point.information = Information::Qfi;
      qfi = relative_sensitivity(point);
      point.information = Information::HomodyneFi;
      fi = relative_sensitivity(point);
    } catch (const std::exception& e) {
      curve.failures.push_back(curve.axis_name + "=" + std::to_string(v) + ": " + e.what());
    }
    curve.qfi_values.push_back(qfi);
    curve.fi_values.push_back(fi);
  }
  return curve;
}

ThresholdResult max_distance_ratio(const SensitivityInput& input, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  SensitivityInput base = input;
  if (base.scenario.b0 == 0.0) base.scenario.b0 = base.scenario.r1 * 1e-6;
  base.validate();

  // The smallest admissible ratio is fixed by the b0/r1 regime bound.
  const double min_ratio = 1.0 / input.phase.thresholds.b0_over_r1;
  auto eval = [&](double ratio) {
    return relative_sensitivity(with_axis_value(base, SweepAxis::R1OverB0, ratio));
  };

  const double at_min = eval(min_ratio);
  if (at_min > tolerance) {
    auto rep = regime_check(with_axis_value(base, SweepAxis::R1OverB0, min_ratio).scenario,
                            input.phase.thresholds);
    rep.ok = false;
    rep.violations.emplace_back("b0/r1 (tolerance unreachable inside the regime)");
    rep.worst_name = "b0/r1";
    rep.worst_value = 1.0 / min_ratio;
    throw RegimeError(rep);
  }

  ThresholdResult out;
  if (std::isinf(tolerance)) {
    out.ratio = std::numeric_limits<double>::infinity();
    out.b0_min = 0.0;
    out.sensitivity = 0.0;
    out.closed_form = true;
    return out;
  }

  // Sensitivity scales as ratio^2 except for the homodyne cos(theta) factor.
  const double guess = min_ratio * std::sqrt(tolerance / at_min);
  if (input.information == Information::Qfi) {
    out.ratio = guess;
    out.closed_form = true;
  } else {
    double lo = min_ratio;
    double hi = guess;
    while (eval(hi) < tolerance) {
      lo = hi;
      hi *= 10.0;
    }
    for (int i = 0; i < 80 && hi / lo > 1.0 + 4.0 * std::numeric_limits<double>::epsilon(); ++i) {
      const double mid = std::sqrt(lo * hi);
      (eval(mid) <= tolerance ? lo : hi) = mid;
    }
    out.ratio = lo;
  }
  out.b0_min = base.scenario.r1 / out.ratio;
  out.sensitivity = eval(out.ratio);
  return out;
}

double mimicker_distance(double b0, double delta_theta_min, double L, double lambda) {
  if (!(b0 > 0.0 && delta_theta_min > 0.0 && L > 0.0 && lambda > 0.0)) {
    throw std::invalid_argument("mimicker_distance needs positive b0, delta_theta, L, lambda");
  }
  return std::cbrt(std::numbers::pi * L * L * b0 * b0 / (lambda * delta_theta_min));
}

}  // namespace wormhole
