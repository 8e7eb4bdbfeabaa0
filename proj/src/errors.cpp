#include "wormhole/errors.hpp"

#include <sstream>

namespace wormhole {
namespace {

std::string truncation_message(double tail_mass, int dim) {
  std::ostringstream os;
  os << "Fock truncation dim=" << dim << " too small: tail mass " << tail_mass
     << " exceeds 1e-10";
  return os.str();
}

}  // namespace

TruncationError::TruncationError(double tail_mass, int dim)
    : std::runtime_error(truncation_message(tail_mass, dim)), tail_mass_(tail_mass), dim_(dim) {}

}  // namespace wormhole
