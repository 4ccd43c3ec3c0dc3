#include <algorithm>
#include <cmath>
#include <numbers>

#include "ubmlab/errors.hpp"
#include "ubmlab/freemeasure.hpp"
#include "ubmlab/quadrature.hpp"

namespace ubmlab::freemeasure {

FreeJacobiLaw::FreeJacobiLaw(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    throw DomainError("free_jacobi_law: alpha and beta must lie in (0, 1)");
  }
  atom0_ = 1.0 - std::min(alpha, beta);
  atom1_ = std::max(alpha + beta - 1.0, 0.0);
  const double centre = alpha + beta - 2.0 * alpha * beta;
  const double radius = 2.0 * std::sqrt(alpha * beta * (1.0 - alpha) * (1.0 - beta));
  r_minus_ = std::clamp(centre - radius, 0.0, 1.0);
  r_plus_ = std::clamp(centre + radius, 0.0, 1.0);
  if (r_minus_ < 1e-14) r_minus_ = 0.0;
  if (1.0 - r_plus_ < 1e-14) r_plus_ = 1.0;
}

double FreeJacobiLaw::density(double x) const {
  if (!(x > r_minus_ && x < r_plus_)) return 0.0;
  return std::sqrt((r_plus_ - x) * (x - r_minus_)) / (2.0 * std::numbers::pi * x * (1.0 - x));
}

double FreeJacobiLaw::continuous_cdf(double x) const {
  if (x <= r_minus_) return 0.0;
  const double h = 0.5 * (r_plus_ - r_minus_);
  const double c = 0.5 * (r_plus_ + r_minus_);
  const double phi_end = x >= r_plus_ ? std::numbers::pi : std::acos(std::clamp((c - x) / h, -1.0, 1.0));

  // x = c - h cos(phi); the density times dx becomes u v / (2 pi x (1 - x)) dphi
  // with u = x - r_minus and v = r_plus - x. The endpoint singularities cancel.
  auto integrand = [&](double phi) {
    const double s = std::sin(0.5 * phi);
    const double co = std::cos(0.5 * phi);
    const double u = 2.0 * h * s * s;
    const double v = 2.0 * h * co * co;
    const double xx = r_minus_ + u;
    const double one_minus = (1.0 - r_plus_) + v;
    const double u_over_x = r_minus_ == 0.0 ? 1.0 : u / xx;
    const double v_over = r_plus_ == 1.0 ? 1.0 : v / one_minus;
    return u_over_x * v_over / (2.0 * std::numbers::pi);
  };
  return adaptive_simpson(integrand, 0.0, phi_end, 1e-12);
}

double FreeJacobiLaw::cdf(double x) const {
  if (x < 0.0) return 0.0;
  double value = atom0_ + continuous_cdf(x);
  if (x >= 1.0) value += atom1_;
  return std::min(value, 1.0);
}

double FreeJacobiLaw::cdf_left(double x) const {
  if (x <= 0.0) return 0.0;
  double value = atom0_ + continuous_cdf(x);
  if (x > 1.0) value += atom1_;
  return std::min(value, 1.0);
}

FreeJacobiLaw free_jacobi_law(double alpha, double beta) { return FreeJacobiLaw(alpha, beta); }

}  // namespace ubmlab::freemeasure
