#include "lambdach/rng.hpp"

#include <cmath>
#include <numbers>

namespace lambdach {

double StreamRng::exponential() { return -std::log(uniform()); }

UnitVector3 StreamRng::direction() {
  const double z = 2.0 * uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return UnitVector3::normalized({r * std::cos(phi), r * std::sin(phi), z});
}

}  // namespace lambdach
