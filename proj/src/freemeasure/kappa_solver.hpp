#pragma once

#include <optional>

#include "ubmlab/freemeasure.hpp"

namespace ubmlab::freemeasure::detail {

/// Damped Newton on (z-1)/(z+1) e^{tz/2} - e^{i theta} from seed; empty on failure.
std::optional<cplx> newton_kappa(double t, double theta, cplx seed);

/// Real root x > 1 of (x-1)/(x+1) e^{tx/2} = 1.
double kappa_at_zero(double t);

/// Continuation from (theta0, z0) to theta1, subdividing the step on failure.
cplx continue_kappa(double t, double theta0, cplx z0, double theta1);

/// Maps theta onto (-pi, pi].
double wrap_angle(double theta);

}  // namespace ubmlab::freemeasure::detail
