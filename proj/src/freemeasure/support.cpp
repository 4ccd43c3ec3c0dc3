#include <cmath>
#include <numbers>

#include "ubmlab/errors.hpp"
#include "ubmlab/freemeasure.hpp"

namespace ubmlab::freemeasure {

double support_halfwidth(double t) {
  if (!(t >= 0.0) || std::isnan(t)) throw DomainError("support_halfwidth: t must be >= 0");
  if (t >= 4.0) return std::numbers::pi;
  return 0.5 * std::sqrt(t * (4.0 - t)) + std::acos(1.0 - 0.5 * t);
}

}  // namespace ubmlab::freemeasure
