#include "wormhole/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wormhole {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

void WormholeScenario::validate() const {
  if (!(b0 >= 0.0) || !std::isfinite(b0)) throw std::invalid_argument("b0 must be finite and >= 0");
  require_positive(L, "L");
  require_positive(lambda, "lambda");
  if (!(r1 > b0) || !std::isfinite(r1)) throw std::invalid_argument("r1 must be finite and > b0");
}

std::string RegimeReport::describe() const {
  std::ostringstream os;
  os.precision(6);
  os << (ok ? "regime ok" : "regime violated") << ": b0/r1=" << b0_over_r1 << " L/r1=" << L_over_r1
     << " lambda/L=" << lambda_over_L << " worst=" << worst_name << " (" << worst_value << ")";
  if (!violations.empty()) {
    os << " violations:";
    for (const auto& v : violations) os << ' ' << v;
  }
  return os.str();
}

RegimeError::RegimeError(RegimeReport report)
    : std::runtime_error(report.describe()), report_(std::move(report)) {}

RegimeReport regime_check(const WormholeScenario& scenario, const RegimeThresholds& thresholds) {
  RegimeReport rep;
  rep.b0_over_r1 = scenario.b0 / scenario.r1;
  rep.L_over_r1 = scenario.L / scenario.r1;
  rep.lambda_over_L = scenario.lambda / scenario.L;

  struct Entry {
    const char* name;
    double value;
    double limit;
  };
  const Entry entries[] = {{"b0/r1", rep.b0_over_r1, thresholds.b0_over_r1},
                           {"L/r1", rep.L_over_r1, thresholds.L_over_r1},
                           {"lambda/L", rep.lambda_over_L, thresholds.lambda_over_L}};
  rep.ok = true;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& e : entries) {
    // NaN ratios (from invalid scenarios) fail the comparison and mark the report.
    if (!(e.value <= e.limit)) {
      rep.ok = false;
      rep.violations.emplace_back(e.name);
    }
    const double load = e.value / e.limit;
    if (load > worst || std::isnan(load)) {
      worst = std::isnan(load) ? std::numeric_limits<double>::infinity() : load;
      rep.worst_name = e.name;
      rep.worst_value = e.value;
    }
  }
  return rep;
}

double proper_radial_coordinate(double r, double b0) {
  if (!(r >= b0)) throw std::domain_error("r < b0: point lies inside the throat radius");
  return std::sqrt((r - b0) * (r + b0));
}

double radial_deficit(double r, double b0) {
  const double l = proper_radial_coordinate(r, b0);
  if (b0 == 0.0) return 0.0;
  return b0 * b0 / (l + r);
}

double proper_distance(const WormholeScenario& scenario) {
  // The emitter may sit on the throat itself, so r1 == b0 is allowed here.
  if (!(scenario.b0 >= 0.0) || !(scenario.L > 0.0)) throw std::invalid_argument("need b0 >= 0 and L > 0");
  // l2 - l1 = (r2 - r1) + (d1 - d2) with d the radial deficit, d1 >= d2.
  const double d1 = radial_deficit(scenario.r1, scenario.b0);
  const double d2 = radial_deficit(scenario.r2(), scenario.b0);
  return scenario.L + (d1 - d2);
}

FlatPhase flat_phase(double L, double lambda) {
  require_positive(L, "L");
  require_positive(lambda, "lambda");
  FlatPhase out;
  const double cycles = L / lambda;
  out.theta_f = 2.0 * std::numbers::pi * cycles;
  out.m = 2.0 * cycles;
  const double tol = std::max(1e-9, 4.0 * std::numeric_limits<double>::epsilon() * cycles);
  out.on_operating_point = cycles >= 1.0 - tol && std::abs(cycles - std::round(cycles)) <= tol;
  return out;
}

WormholePhase wormhole_phase(const WormholeScenario& scenario, const PhaseOptions& options) {
  scenario.validate();
  if (!options.override_regime) {
    auto rep = regime_check(scenario, options.thresholds);
    if (!rep.ok) throw RegimeError(std::move(rep));
  }
  WormholePhase out;
  out.theta_f = flat_phase(scenario.L, scenario.lambda).theta_f;
  const double ratio = scenario.b0 / scenario.r1;
  out.delta = out.theta_f * 0.5 * ratio * ratio * (scenario.L / scenario.r1);
  out.theta = out.theta_f - out.delta;
  return out;
}

WormholePhase naive_proper_length_phase(const WormholeScenario& scenario) {
  WormholePhase out;
  out.theta_f = flat_phase(scenario.L, scenario.lambda).theta_f;
  const double excess = proper_distance(scenario) - scenario.L;
  // Signed so that theta = theta_f - delta holds; the proper length adds phase.
  out.delta = -2.0 * std::numbers::pi * excess / scenario.lambda;
  out.theta = out.theta_f - out.delta;
  return out;
}

MetricPerturbation metric_perturbation(double r1, double b0) {
  if (!(r1 > b0) || !(b0 >= 0.0)) throw std::invalid_argument("metric_perturbation needs r1 > b0 >= 0");
  const double ratio = b0 / r1;
  MetricPerturbation out;
  out.g_rr = ratio * ratio;
  out.strained = out.g_rr >= 1e-2;
  return out;
}

double dtheta_db0(const WormholeScenario& scenario, const PhaseOptions& options) {
  const auto phase = wormhole_phase(scenario, options);
  return -phase.theta_f * scenario.b0 * scenario.L / (scenario.r1 * scenario.r1 * scenario.r1);
}

double detectable_throat_scale(double delta_theta, double L, double lambda) {
  require_positive(delta_theta, "delta_theta");
  require_positive(L, "L");
  require_positive(lambda, "lambda");
  return delta_theta * lambda / (L * L);
}

}  // namespace wormhole
