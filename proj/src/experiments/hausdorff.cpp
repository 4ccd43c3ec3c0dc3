#include <algorithm>
#include <cmath>
#include <numbers>

#include "ubmlab/errors.hpp"
#include "ubmlab/experiments.hpp"

namespace ubmlab::experiments {

namespace {

double chord(double angular) { return 2.0 * std::sin(0.5 * std::min(angular, std::numbers::pi)); }

// Angular distance on the circle between two angles in (-pi, pi].
double circular_gap(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 2.0 * std::numbers::pi - d);
}

}  // namespace

double hausdorff_to_arc(std::span<const double> angles, double half_width) {
  if (angles.empty()) throw ContractError("hausdorff_to_arc: no angles");
  if (!(half_width >= 0.0 && half_width <= std::numbers::pi)) {
    throw DomainError("hausdorff_to_arc: half_width must lie in [0, pi]");
  }
  std::vector<double> sorted(angles.begin(), angles.end());
  for (double a : sorted) {
    if (!(a > -std::numbers::pi - 1e-12 && a <= std::numbers::pi)) {
      throw DomainError("hausdorff_to_arc: angles must lie in (-pi, pi]");
    }
  }
  std::sort(sorted.begin(), sorted.end());

  double worst = 0.0;
  for (double a : sorted) worst = std::max(worst, chord(std::max(0.0, std::abs(a) - half_width)));

  const int m = half_width == 0.0 ? 1 : kArcGridPoints;
  for (int j = 0; j < m; ++j) {
    const double phi = m == 1 ? 0.0 : -half_width + 2.0 * half_width * j / (m - 1);
    auto it = std::lower_bound(sorted.begin(), sorted.end(), phi);
    // Neighbours on both sides, wrapping around the circle.
    const double up = it == sorted.end() ? sorted.front() : *it;
    const double down = it == sorted.begin() ? sorted.back() : *(it - 1);
    worst = std::max(worst, chord(std::min(circular_gap(phi, up), circular_gap(phi, down))));
  }
  return worst;
}

double sorted_pair_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ContractError("sorted_pair_distance: lengths differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(std::polar(1.0, a[k]) - std::polar(1.0, b[k])));
  return worst;
}

}  // namespace ubmlab::experiments
