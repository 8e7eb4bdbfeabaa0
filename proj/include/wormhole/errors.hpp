#pragma once

#include <stdexcept>
#include <string>

namespace wormhole {

// Invalid arguments surface as std::invalid_argument and out-of-geometry
// inputs as std::domain_error. The types below carry extra payload.

/// Fock truncation too small: the last 10% of the basis holds too much weight.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(double tail_mass, int dim);

  double tail_mass() const noexcept { return tail_mass_; }
  int dim() const noexcept { return dim_; }

 private:
  double tail_mass_;
  int dim_;
};

/// The parameter of interest has zero first-order influence on the phase.
class NoSignalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine reached a state that valid inputs never produce.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wormhole
