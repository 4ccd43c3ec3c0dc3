#include <cmath>
#include <numbers>

#include "kappa_solver.hpp"
#include "ubmlab/errors.hpp"

namespace ubmlab::freemeasure {

namespace detail {

constexpr double kContinuationStep = 0.02;

namespace {

constexpr int kMaxNewtonIterations = 100;
constexpr double kNewtonTarget = 5e-15;
constexpr int kMaxSubdivision = 24;

cplx defining_map(double t, cplx z) { return (z - 1.0) / (z + 1.0) * std::exp(0.5 * t * z); }

cplx defining_map_derivative(double t, cplx z) {
  const cplx zp = z + 1.0;
  return std::exp(0.5 * t * z) * (2.0 / (zp * zp) + 0.5 * t * (z - 1.0) / zp);
}

}  // namespace

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(theta, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

std::optional<cplx> newton_kappa(double t, double theta, cplx seed) {
  const cplx target = std::polar(1.0, theta);
  cplx z = seed;
  if (!(z.real() > 0.0)) return std::nullopt;
  double res = std::abs(defining_map(t, z) - target);
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    if (res <= kNewtonTarget) return z;
    const cplx g = defining_map(t, z) - target;
    const cplx dg = defining_map_derivative(t, z);
    if (dg == 0.0) break;
    const cplx step = g / dg;
    double damping = 1.0;
    bool accepted = false;
    while (damping > 1e-12) {
      const cplx trial = z - damping * step;
      if (trial.real() > 0.0) {
        const double trial_res = std::abs(defining_map(t, trial) - target);
        if (trial_res < res) {
          z = trial;
          res = trial_res;
          accepted = true;
          break;
        }
      }
      damping *= 0.5;
    }
    if (!accepted) break;
  }
  if (res < kKappaTolerance) return z;
  return std::nullopt;
}

double kappa_at_zero(double t) {
  // log((x-1)/(x+1)) + t x / 2 is increasing on (1, inf).
  auto f = [t](double x) { return std::log((x - 1.0) / (x + 1.0)) + 0.5 * t * x; };
  double lo = 1.0;
  double hi = 2.0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  if (auto z = newton_kappa(t, 0.0, cplx(x, 0.0))) return z->real();
  return x;
}

cplx continue_kappa(double t, double theta0, cplx z0, double theta1) {
  // Try the whole remaining step; halve it on failure, grow it back on success.
  double from = theta0;
  cplx z = z0;
  int depth = 0;
  while (from != theta1) {
    const double span = theta1 - from;
    const double step = span / std::ldexp(1.0, depth);
    const double to = (depth == 0) ? theta1 : from + step;
    if (auto next = newton_kappa(t, to, z)) {
      z = *next;
      from = to;
      if (depth > 0) --depth;
    } else if (++depth > kMaxSubdivision) {
      throw ConvergenceError("kappa: Newton continuation failed at theta = " + std::to_string(to));
    }
  }
  return z;
}

}  // namespace detail

double kappa_residual(double t, double theta, cplx z) {
  return std::abs((z - 1.0) / (z + 1.0) * std::exp(0.5 * t * z) - std::polar(1.0, theta));
}

cplx kappa(double t, double theta) {
  if (!(t > 0.0 && t <= kMaxTime)) throw DomainError("kappa: t must lie in (0, 16]");
  if (!std::isfinite(theta)) throw DomainError("kappa: theta must be finite");
  const double a = support_halfwidth(t);
  const double abs_theta = std::abs(theta);
  const bool interior = (t > 4.0) ? abs_theta <= std::numbers::pi : abs_theta < a;
  if (!interior) throw DomainError("kappa: theta outside the open support arc");

  cplx z(detail::kappa_at_zero(t), 0.0);
  double from = 0.0;
  while (from < abs_theta) {
    const double to = std::min(abs_theta, from + detail::kContinuationStep);
    z = detail::continue_kappa(t, from, z, to);
    from = to;
  }
  return theta < 0.0 ? std::conj(z) : z;
}

}  // namespace ubmlab::freemeasure
