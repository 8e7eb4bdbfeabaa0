#include "wormhole/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wormhole/errors.hpp"

namespace wormhole {
namespace {

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::uint32_t words[2];
  seq.generate(std::begin(words), std::end(words));
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace

double qfi_pure_gaussian(double alpha, double r) {
  const double sh = std::sinh(r);
  const double ch = std::cosh(r);
  return 4.0 * (alpha * alpha * std::exp(-2.0 * r) + 2.0 * sh * sh * ch * ch);
}

double qfi_coherent(double n_mean) {
  if (!(n_mean >= 0.0)) throw std::invalid_argument("mean photon number must be >= 0");
  return 4.0 * n_mean;
}

double fi_homodyne(double alpha, double theta) {
  const double c = std::cos(theta);
  return 4.0 * alpha * alpha * c * c;
}

double cramer_rao(double fisher, long long repetitions) {
  if (!(fisher > 0.0)) {
    throw std::invalid_argument("Fisher information must be > 0 (zero information: no estimate possible)");
  }
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(repetitions) * fisher);
}

double fi_homodyne_noisy(const ProbeSpec& probe, double theta) {
  probe.validate();
  const double c = std::cos(theta);
  return 4.0 * probe.eta * probe.alpha * probe.alpha * c * c / (1.0 + 2.0 * probe.eta * probe.n_T);
}

double fi_numerical(const ProbeSpec& probe, double theta, double dtheta) {
  if (!(dtheta >= 1e-6 && dtheta <= 1e-2)) {
    throw std::invalid_argument("dtheta must lie in [1e-6, 1e-2]");
  }
  const auto at = homodyne_p_density(prepare_probe(probe, theta));
  const auto plus = homodyne_p_density(prepare_probe(probe, theta + dtheta));
  const auto minus = homodyne_p_density(prepare_probe(probe, theta - dtheta));
  if (!(at.sigma2 > 0.0 && plus.sigma2 > 0.0 && minus.sigma2 > 0.0)) {
    throw InternalError("degenerate homodyne density (sigma^2 <= 0)");
  }
  const double dmu = (plus.mu - minus.mu) / (2.0 * dtheta);
  const double dvar = (plus.sigma2 - minus.sigma2) / (2.0 * dtheta);

  // Score of N(mu, s2): d/dtheta ln p = dmu (x-mu)/s2 + dvar/(2 s2) ((x-mu)^2/s2 - 1).
  const double sigma = std::sqrt(at.sigma2);
  constexpr int kPoints = 4001;
  const double half_width = 12.0 * sigma;
  const double h = 2.0 * half_width / (kPoints - 1);
  double integral = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = at.mu - half_width + h * i;
    const double u = x - at.mu;
    const double score = dmu * u / at.sigma2 + dvar / (2.0 * at.sigma2) * (u * u / at.sigma2 - 1.0);
    const double w = (i == 0 || i == kPoints - 1) ? 0.5 : 1.0;
    integral += w * score * score * at.pdf(x);
  }
  return integral * h;
}

double reparametrize_fisher(double fisher_theta, double dtheta_dparam) {
  return fisher_theta * dtheta_dparam * dtheta_dparam;
}

double fold_phase(double theta) {
  return theta - std::numbers::pi * std::round(theta / std::numbers::pi);
}

EstimationReport mc_estimation_experiment(const ProbeSpec& probe, double theta_true,
                                          int samples_per_trial, int trials, std::uint64_t seed,
                                          int threads) {
  probe.validate();
  if (trials < 2) throw std::invalid_argument("trials must be >= 2 (variance undefined)");
  if (samples_per_trial < 1) throw std::invalid_argument("samples_per_trial must be >= 1");
  if (!(probe.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (probe.r != 0.0) throw std::invalid_argument("the estimation experiment uses coherent probes (r = 0)");
  if (!(std::abs(theta_true) < std::numbers::pi / 2)) {
    throw std::invalid_argument("theta_true must lie in (-pi/2, pi/2)");
  }
  const double fisher = fi_homodyne_noisy(probe, theta_true);
  if (!(samples_per_trial * fisher > 100.0)) {
    throw std::invalid_argument("samples_per_trial * F must exceed 100 (asymptotic regime)");
  }

  const auto state = prepare_probe(probe, theta_true);
  const double amplitude = std::numbers::sqrt2 * std::sqrt(probe.eta) * probe.alpha;

  std::vector<double> estimates(static_cast<std::size_t>(trials));
  std::vector<char> clamped(static_cast<std::size_t>(trials), 0);
  auto run_range = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      const auto draws = sample_homodyne(state, static_cast<std::size_t>(samples_per_trial),
                                         trial_seed(seed, k));
      double sum = 0.0;
      for (double x : draws) sum += x;
      const double arg = -(sum / samples_per_trial) / amplitude;
      const double clipped = std::clamp(arg, -1.0, 1.0);
      clamped[static_cast<std::size_t>(k)] = clipped != arg;
      estimates[static_cast<std::size_t>(k)] = std::asin(clipped);
    }
  };

  const int workers = std::clamp(threads, 1, trials);
  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::jthread> pool;
    const int chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(trials, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
  }

  EstimationReport report;
  report.theta_true = theta_true;
  report.trials = trials;
  report.samples_per_trial = samples_per_trial;
  report.seed = seed;
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= trials;
  double ss = 0.0;
  for (double e : estimates) ss += (e - mean) * (e - mean);
  report.estimator_mean = mean;
  report.estimator_variance = ss / (trials - 1);
  report.crb = 1.0 / (static_cast<double>(samples_per_trial) * fisher);
  report.ratio = report.estimator_variance / report.crb;
  for (char c : clamped) report.clamp_count += c;
  return report;
}

}  // namespace wormhole
