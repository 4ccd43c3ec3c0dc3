#include <algorithm>
#include <cmath>
#include <numbers>

#include "ubmlab/errors.hpp"
#include "ubmlab/freemeasure.hpp"

namespace ubmlab::freemeasure {

double semicircle_density(double x) {
  const double s = 4.0 - x * x;
  return s > 0.0 ? std::sqrt(s) / (2.0 * std::numbers::pi) : 0.0;
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + (x * std::sqrt(4.0 - x * x) + 4.0 * std::asin(0.5 * x)) / (4.0 * std::numbers::pi);
}

double semicircle_quantile(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("semicircle_quantile: r must lie in [0, 1]");
  if (r == 0.0) return -2.0;
  if (r == 1.0) return 2.0;
  if (r == 0.5) return 0.0;
  double lo = -2.0, hi = 2.0;
  double x = 2.0 * std::sin(std::numbers::pi * (r - 0.5) / 2.0);
  for (int it = 0; it < 200; ++it) {
    const double err = semicircle_cdf(x) - r;
    if (err == 0.0) break;
    (err > 0.0 ? hi : lo) = x;
    const double d = semicircle_density(x);
    double next = d > 0.0 ? x - err / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x)) || hi - lo < 1e-15) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace ubmlab::freemeasure
