#include "wormhole/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace wormhole {
namespace {

constexpr double kUncertaintySlack = 1e-12;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void require_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("eta must lie in (0, 1], got " + std::to_string(eta));
  }
}

}  // namespace

GaussianState::GaussianState(Vec2 mean, Mat2 cov) : mean_(mean), cov_(cov) {
  for (double m : mean_) require_finite(m, "state mean");
  for (const auto& row : cov_) {
    for (double c : row) require_finite(c, "covariance entry");
  }
  if (cov_[0][1] != cov_[1][0]) {
    throw std::invalid_argument("covariance matrix must be symmetric");
  }
  if (!(cov_[0][0] > 0.0 && cov_[1][1] > 0.0)) {
    throw std::invalid_argument("covariance diagonal must be strictly positive");
  }
  if (det() < 0.25 - kUncertaintySlack) {
    throw std::invalid_argument("covariance violates the uncertainty relation det >= 1/4");
  }
}

GaussianState GaussianState::vacuum() { return GaussianState({0.0, 0.0}, {{{0.5, 0.0}, {0.0, 0.5}}}); }

double GaussianState::det() const noexcept {
  return cov_[0][0] * cov_[1][1] - cov_[0][1] * cov_[1][0];
}

bool GaussianState::is_pure(double tol) const noexcept { return std::abs(det() - 0.25) <= tol; }

void ProbeSpec::validate() const {
  require_finite(alpha, "alpha");
  require_finite(r, "squeezing r");
  if (!(n_T >= 0.0) || !std::isfinite(n_T)) {
    throw std::invalid_argument("n_T must be finite and >= 0");
  }
  require_eta(eta);
}

double HomodyneDensity::pdf(double p) const {
  const double d = p - mu;
  return std::exp(-d * d / (2.0 * sigma2)) / std::sqrt(2.0 * std::numbers::pi * sigma2);
}

GaussianState coherent_state(double alpha) {
  require_finite(alpha, "alpha");
  return GaussianState({std::numbers::sqrt2 * alpha, 0.0}, {{{0.5, 0.0}, {0.0, 0.5}}});
}

GaussianState displaced_squeezed_thermal(const ProbeSpec& spec) {
  spec.validate();
  const double thermal = 1.0 + 2.0 * spec.n_T;
  const double vx = thermal * std::exp(-2.0 * spec.r) / 2.0;
  const double vp = thermal * std::exp(2.0 * spec.r) / 2.0;
  return GaussianState({std::numbers::sqrt2 * spec.alpha, 0.0}, {{{vx, 0.0}, {0.0, vp}}});
}

GaussianState apply_phase_shift(const GaussianState& state, double theta) {
  require_finite(theta, "theta");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Mat2 rot{{{c, s}, {-s, c}}};
  const auto& m = state.mean();
  const auto& v = state.cov();

  const Vec2 mean{c * m[0] + s * m[1], -s * m[0] + c * m[1]};
  Mat2 rv{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      rv[i][j] = rot[i][0] * v[0][j] + rot[i][1] * v[1][j];
    }
  }
  Mat2 cov{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      cov[i][j] = rv[i][0] * rot[j][0] + rv[i][1] * rot[j][1];
    }
  }
  // Restore exact symmetry lost to rounding.
  const double off = 0.5 * (cov[0][1] + cov[1][0]);
  cov[0][1] = cov[1][0] = off;
  return GaussianState(mean, cov);
}

GaussianState apply_loss(const GaussianState& state, double eta) {
  require_eta(eta);
  const double t = std::sqrt(eta);
  const auto& m = state.mean();
  const auto& v = state.cov();
  const double noise = 0.5 * (1.0 - eta);
  return GaussianState({t * m[0], t * m[1]},
                       {{{eta * v[0][0] + noise, eta * v[0][1]},
                         {eta * v[1][0], eta * v[1][1] + noise}}});
}

GaussianState prepare_probe(const ProbeSpec& spec, double theta) {
  return apply_phase_shift(apply_loss(displaced_squeezed_thermal(spec), spec.eta), theta);
}

double mean_photon_number(const GaussianState& state) {
  const auto& m = state.mean();
  const auto& v = state.cov();
  return 0.5 * (m[0] * m[0] + m[1] * m[1]) + 0.5 * (v[0][0] + v[1][1] - 1.0);
}

double photon_number_variance(const GaussianState& state) {
  const auto& d = state.mean();
  const auto& v = state.cov();
  const double tr_v2 = v[0][0] * v[0][0] + 2.0 * v[0][1] * v[1][0] + v[1][1] * v[1][1];
  const double dvd = d[0] * (v[0][0] * d[0] + v[0][1] * d[1]) + d[1] * (v[1][0] * d[0] + v[1][1] * d[1]);
  return 0.5 * tr_v2 + dvd - 0.25;
}

HomodyneDensity homodyne_p_density(const GaussianState& state) {
  return HomodyneDensity{state.mean()[1], state.cov()[1][1]};
}

std::vector<double> sample_homodyne(const GaussianState& state, std::size_t count,
                                    std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("sample count must be >= 1");
  const auto density = homodyne_p_density(state);
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(density.mu, std::sqrt(density.sigma2));
  std::vector<double> out(count);
  for (auto& x : out) x = normal(engine);
  return out;
}

}  // namespace wormhole
