#include "wormhole/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wormhole/errors.hpp"

namespace wormhole::fock {
namespace {

using cplx = std::complex<double>;

double tail_of(const std::vector<cplx>& amps) {
  const std::size_t n = amps.size();
  const std::size_t start = n - std::max<std::size_t>(1, n / 10);
  double tail = 0.0;
  for (std::size_t k = start; k < n; ++k) tail += std::norm(amps[k]);
  return tail;
}

std::vector<cplx> squeezed_vacuum(double r, std::size_t dim) {
  std::vector<cplx> c(dim, 0.0);
  c[0] = 1.0 / std::sqrt(std::cosh(r));
  const double t = std::tanh(r);
  for (std::size_t n = 2; n < dim; n += 2) {
    const double k = static_cast<double>(n);
    c[n] = -t * std::sqrt((k - 1.0) / k) * c[n - 2];
  }
  return c;
}

// y = alpha (a^dagger - a) x, real alpha.
void apply_generator(double alpha, const std::vector<cplx>& x, std::vector<cplx>& y) {
  const std::size_t n = x.size();
  for (std::size_t k = 0; k < n; ++k) {
    cplx v = 0.0;
    if (k > 0) v += std::sqrt(static_cast<double>(k)) * x[k - 1];
    if (k + 1 < n) v -= std::sqrt(static_cast<double>(k + 1)) * x[k + 1];
    y[k] = alpha * v;
  }
}

void displace(double alpha, std::vector<cplx>& state) {
  if (alpha == 0.0) return;
  const std::size_t n = state.size();
  // ||alpha (a^dagger - a)|| <= 2 |alpha| sqrt(n); keep each sub-step's norm below 1/2.
  const double gen_norm = 2.0 * std::abs(alpha) * std::sqrt(static_cast<double>(n));
  const int steps = std::max(1, static_cast<int>(std::ceil(2.0 * gen_norm)));
  const double h = alpha / steps;

  std::vector<cplx> term(n), next(n);
  for (int s = 0; s < steps; ++s) {
    term = state;
    for (int order = 1; order < 60; ++order) {
      apply_generator(h / order, term, next);
      std::swap(term, next);
      double size = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        state[k] += term[k];
        size += std::norm(term[k]);
      }
      if (size < 1e-36) break;
    }
  }
}

}  // namespace

double FockVector::norm2() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

FockVector build_displaced_squeezed(double alpha, double r, int dim) {
  if (dim < 2) throw std::invalid_argument("Fock dimension must be >= 2");
  if (!std::isfinite(alpha) || !std::isfinite(r)) {
    throw std::invalid_argument("alpha and r must be finite");
  }
  // Pad the working basis so the truncated generator never reflects amplitude
  // back into the retained part.
  const auto work = static_cast<std::size_t>(dim) + static_cast<std::size_t>(dim) / 2 + 8;
  auto amps = squeezed_vacuum(r, work);
  displace(alpha, amps);
  amps.resize(static_cast<std::size_t>(dim));

  FockVector out;
  out.tail_mass = tail_of(amps);
  double n2 = 0.0;
  for (const auto& a : amps) n2 += std::norm(a);
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : amps) a *= scale;
  out.amps = std::move(amps);

  if (!(out.tail_mass < kMaxTailMass)) throw TruncationError(out.tail_mass, dim);
  return out;
}

FockVector build_adequate(double alpha, double r, int dim, int max_dim) {
  for (int d = dim;; d *= 2) {
    try {
      return build_displaced_squeezed(alpha, r, d);
    } catch (const TruncationError&) {
      if (d * 2 > max_dim) throw;
    }
  }
}

FockVector apply_phase(const FockVector& state, double theta) {
  FockVector out = state;
  for (std::size_t n = 0; n < out.amps.size(); ++n) {
    out.amps[n] *= std::polar(1.0, -theta * static_cast<double>(n));
  }
  return out;
}

Moments fock_moments(const FockVector& state) {
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t n = 0; n < state.amps.size(); ++n) {
    const double w = std::norm(state.amps[n]);
    const double k = static_cast<double>(n);
    m1 += k * w;
    m2 += k * k * w;
  }
  return {m1, m2 - m1 * m1};
}

std::vector<double> hermite_functions(double x, int count) {
  std::vector<double> phi(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return phi;
  phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (count > 1) phi[1] = std::numbers::sqrt2 * x * phi[0];
  for (int n = 1; n + 1 < count; ++n) {
    const double k = static_cast<double>(n);
    phi[n + 1] = std::sqrt(2.0 / (k + 1.0)) * x * phi[n] - std::sqrt(k / (k + 1.0)) * phi[n - 1];
  }
  return phi;
}

std::vector<double> fock_quadrature_pdf(const FockVector& state, std::span<const double> grid) {
  const int dim = state.dim();
  // (-i)^n cycles through 1, -i, -1, i.
  static constexpr cplx kPhase[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  std::vector<double> out;
  out.reserve(grid.size());
  for (double p : grid) {
    const auto phi = hermite_functions(p, dim);
    cplx psi = 0.0;
    for (int n = 0; n < dim; ++n) psi += state.amps[static_cast<std::size_t>(n)] * kPhase[n % 4] * phi[static_cast<std::size_t>(n)];
    out.push_back(std::norm(psi));
  }
  return out;
}

}  // namespace wormhole::fock
