#include <algorithm>
#include <cmath>
#include <numbers>

#include "kappa_solver.hpp"
#include "ubmlab/errors.hpp"
#include "ubmlab/quadrature.hpp"

namespace ubmlab::freemeasure {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPanelTolerance = 1e-13;

}  // namespace

SpectralMeasure::SpectralMeasure(double t, int grid_size)
    : t_(t), half_width_(0.0), has_edge_(false) {
  if (!(t > 0.0 && t <= kMaxTime)) throw DomainError("SpectralMeasure: t must lie in (0, 16]");
  if (grid_size < 16) throw DomainError("SpectralMeasure: grid_size must be >= 16");
  half_width_ = support_halfwidth(t);
  has_edge_ = t <= 4.0;

  // Nodes cluster quadratically toward the edge, where kappa varies fastest.
  const double top = upper();
  const auto m = static_cast<std::size_t>(grid_size);
  nodes_.resize(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    const double u = static_cast<double>(j) / static_cast<double>(m);
    nodes_[j] = has_edge_ ? top * (1.0 - (1.0 - u) * (1.0 - u)) : top * u;
  }
  nodes_.back() = top;

  roots_.resize(m + 1);
  roots_[0] = cplx(detail::kappa_at_zero(t), 0.0);
  for (std::size_t j = 1; j <= m; ++j) {
    roots_[j] = detail::continue_kappa(t, nodes_[j - 1], roots_[j - 1], nodes_[j]);
  }

  cumulative_.assign(m + 1, 0.0);
  for (std::size_t j = 1; j <= m; ++j) {
    const cplx seed = roots_[j - 1];
    auto rho = [&](double th) {
      auto z = detail::newton_kappa(t, th, seed);
      if (!z) z = detail::continue_kappa(t, nodes_[j - 1], seed, th);
      return z->real();
    };
    cumulative_[j] = cumulative_[j - 1] + adaptive_simpson(rho, nodes_[j - 1], nodes_[j], kPanelTolerance) / kTwoPi;
  }

  if (has_edge_) {
    // The density vanishes like a square root at the edge, so the secant
    // through the two innermost samples is taken in rho^2.
    const cplx inner = detail::continue_kappa(t, top, roots_.back(), top - kEdgeBand);
    edge_rho_inner_ = roots_.back().real();
    const double rho_prev = inner.real();
    edge_slope_ = (edge_rho_inner_ * edge_rho_inner_ - rho_prev * rho_prev) / kEdgeBand;
    edge_mass_ = edge_band_mass(kEdgeBand);
  }
}

std::size_t SpectralMeasure::nearest_node(double theta) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), theta);
  if (it == nodes_.end()) return nodes_.size() - 1;
  auto j = static_cast<std::size_t>(it - nodes_.begin());
  if (j > 0 && theta - nodes_[j - 1] < nodes_[j] - theta) --j;
  return j;
}

double SpectralMeasure::edge_density(double abs_theta) const {
  return std::sqrt(std::max(0.0, edge_rho_inner_ * edge_rho_inner_ + edge_slope_ * (abs_theta - upper())));
}

double SpectralMeasure::edge_band_mass(double width) const {
  if (width <= 0.0) return 0.0;
  if (edge_slope_ == 0.0) return width * edge_rho_inner_ / kTwoPi;
  const double r2 = edge_rho_inner_ * edge_rho_inner_;
  double x = width;
  if (edge_slope_ < 0.0) x = std::min(x, -r2 / edge_slope_);
  const double end = std::max(0.0, r2 + edge_slope_ * x);
  return 2.0 * (end * std::sqrt(end) - r2 * edge_rho_inner_) / (3.0 * edge_slope_) / kTwoPi;
}

cplx SpectralMeasure::kappa(double theta) const {
  const double w = detail::wrap_angle(theta);
  const double abs_theta = std::abs(w);
  if (abs_theta > upper()) throw DomainError("SpectralMeasure::kappa: theta outside the solved arc");
  const std::size_t j = nearest_node(abs_theta);
  auto z = detail::newton_kappa(t_, abs_theta, roots_[j]);
  const cplx root = z ? *z : detail::continue_kappa(t_, nodes_[j], roots_[j], abs_theta);
  return w < 0.0 ? std::conj(root) : root;
}

double SpectralMeasure::density(double theta) const {
  const double abs_theta = std::abs(detail::wrap_angle(theta));
  if (has_edge_) {
    if (abs_theta >= half_width_) return 0.0;
    if (abs_theta > upper()) return edge_density(abs_theta);
  }
  return kappa(abs_theta).real();
}

double SpectralMeasure::density_per_radian(double theta) const { return density(theta) / kTwoPi; }

double SpectralMeasure::half_mass(double theta) const {
  const double top = upper();
  if (theta >= half_width_) return cumulative_.back() + edge_mass_;
  if (theta > top) return cumulative_.back() + edge_band_mass(theta - top);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), theta);
  const auto j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  if (theta == nodes_[j]) return cumulative_[j];
  const cplx seed = roots_[j];
  auto rho = [&](double th) {
    auto z = detail::newton_kappa(t_, th, seed);
    if (!z) z = detail::continue_kappa(t_, nodes_[j], seed, th);
    return z->real();
  };
  return cumulative_[j] + adaptive_simpson(rho, nodes_[j], theta, kPanelTolerance) / kTwoPi;
}

double SpectralMeasure::cdf(double theta) const {
  if (std::isnan(theta)) throw DomainError("cdf: theta is NaN");
  if (theta >= std::numbers::pi) return 1.0;
  if (theta <= -std::numbers::pi) return 0.0;
  if (has_edge_) {
    if (theta >= half_width_) return 1.0;
    if (theta <= -half_width_) return 0.0;
  }
  const double h = half_mass(std::abs(theta));
  return std::clamp(theta >= 0.0 ? 0.5 + h : 0.5 - h, 0.0, 1.0);
}

double SpectralMeasure::quantile(double r) const {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("quantile: r must lie in [0, 1]");
  if (r == 0.0) return -half_width_;
  if (r == 1.0) return half_width_;
  if (r == 0.5) return 0.0;
  if (r < 0.5) return -quantile(1.0 - r);

  const double target = r - 0.5;
  const double total = cumulative_.back() + edge_mass_;
  if (target >= total) return half_width_;

  const double top = upper();
  double lo, hi;
  if (target > cumulative_.back()) {
    lo = top;
    hi = half_width_;
  } else {
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
    const auto j = static_cast<std::size_t>(it - cumulative_.begin());
    if (cumulative_[j] == target) return nodes_[j];
    lo = nodes_[j - 1];
    hi = nodes_[j];
  }

  // Safeguarded Newton on half_mass(theta) = target.
  double theta = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double err = half_mass(theta) - target;
    if (std::abs(err) <= 1e-14) break;
    (err > 0.0 ? hi : lo) = theta;
    const double slope = density(theta) / kTwoPi;
    double next = slope > 0.0 ? theta - err / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo < 1e-15) break;
    theta = next;
  }
  return theta;
}

cplx SpectralMeasure::classical_location(double r) const {
  if (t_ >= 4.0) throw DomainError("classical_location: requires t < 4");
  return std::polar(1.0, quantile(r));
}

double SpectralMeasure::trig_moment(int n, double tol) const {
  const double top = upper();
  auto f = [&](double th) { return std::cos(n * th) * density(th); };
  // Integrate node panel by node panel so every evaluation is seeded locally.
  double sum = 0.0;
  const std::size_t stride = 16;
  for (std::size_t j = 0; j + 1 < nodes_.size(); j += stride) {
    const std::size_t k = std::min(j + stride, nodes_.size() - 1);
    sum += adaptive_simpson(f, nodes_[j], nodes_[k], tol / 256.0);
  }
  if (has_edge_) sum += adaptive_simpson(f, top, half_width_, tol / 256.0);
  return 2.0 * sum / kTwoPi;
}

double SpectralMeasure::total_mass(double tol) const { return trig_moment(0, tol); }

double density(double t, double theta) { return SpectralMeasure(t).density(theta); }
double cdf(double t, double theta) { return SpectralMeasure(t).cdf(theta); }
double quantile(double t, double r) { return SpectralMeasure(t).quantile(r); }

cplx classical_location(double t, double r) {
  if (!(t >= 0.0) || t >= 4.0) throw DomainError("classical_location: requires t in [0, 4)");
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("classical_location: r must lie in [0, 1]");
  if (t == 0.0) return cplx(1.0, 0.0);
  return SpectralMeasure(t).classical_location(r);
}

cplx pushforward_ft(const SpectralMeasure& nu, double x) {
  if (!(nu.t() < 4.0)) throw DomainError("pushforward_ft: requires t in (0, 4)");
  if (std::isnan(x)) throw DomainError("pushforward_ft: x is NaN");
  return std::polar(1.0, nu.quantile(semicircle_cdf(std::clamp(x, -2.0, 2.0))));
}

cplx pushforward_ft(double t, double x) {
  if (!(t > 0.0 && t < 4.0)) throw DomainError("pushforward_ft: requires t in (0, 4)");
  return pushforward_ft(SpectralMeasure(t), x);
}

}  // namespace ubmlab::freemeasure
