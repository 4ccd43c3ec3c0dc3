#pragma once

// The law nu_t of the free unitary Brownian motion, the semicircle law, the
// transport map f_t between them, and the free Jacobi law.
//
// Densities of nu_t are reported with respect to normalized Haar measure on the
// circle (integrate against dtheta / 2pi). Per-radian values are available
// through SpectralMeasure::density_per_radian.

#include <complex>
#include <vector>

namespace ubmlab::freemeasure {

using cplx = std::complex<double>;

/// Half-width a(t) of the support arc {e^{i theta} : |theta| <= a(t)}; pi for t >= 4.
double support_halfwidth(double t);

/// |(z-1)/(z+1) e^{tz/2} - e^{i theta}|.
double kappa_residual(double t, double theta, cplx z);

inline constexpr double kKappaTolerance = 1e-12;

/// Largest supported time. Beyond it kappa sits within e^{-t/2} of 1 and the
/// residual of a double-precision z can no longer reach kKappaTolerance; the
/// law is then Haar to within 1e-3 anyway.
inline constexpr double kMaxTime = 16.0;

/// Unique solution z with Re z > 0 of (z-1)/(z+1) e^{tz/2} = e^{i theta}.
/// Requires 0 < t <= kMaxTime and theta strictly inside the support arc. Solved by damped
/// Newton with continuation from theta = 0.
cplx kappa(double t, double theta);

/// nu_t with precomputed solution and cumulative-mass tables. Immutable after
/// construction; all queries are safe to call concurrently.
class SpectralMeasure {
 public:
  /// Width of the band next to each support endpoint where the density is
  /// extrapolated instead of solved.
  static constexpr double kEdgeBand = 1e-4;

  explicit SpectralMeasure(double t, int grid_size = 2048);

  double t() const { return t_; }
  double half_width() const { return half_width_; }
  bool has_edge() const { return has_edge_; }

  /// Density w.r.t. normalized Haar measure (Re kappa inside the arc, 0 outside).
  double density(double theta) const;
  double density_per_radian(double theta) const;
  /// kappa via the precomputed continuation grid.
  cplx kappa(double theta) const;

  double cdf(double theta) const;
  double quantile(double r) const;
  /// exp(i quantile(r)); requires t < 4.
  cplx classical_location(double r) const;

  /// Integral of cos(n theta) against nu_t by adaptive quadrature.
  double trig_moment(int n, double tol = 1e-10) const;
  /// Total mass by adaptive quadrature.
  double total_mass(double tol = 1e-10) const;

 private:
  double upper() const { return has_edge_ ? half_width_ - kEdgeBand : half_width_; }
  std::size_t nearest_node(double theta) const;
  double edge_density(double abs_theta) const;
  double edge_band_mass(double width) const;
  // mass of [0, theta] for 0 <= theta <= half_width
  double half_mass(double theta) const;

  double t_;
  double half_width_;
  bool has_edge_;
  std::vector<double> nodes_;
  std::vector<cplx> roots_;
  std::vector<double> cumulative_;  // mass of [0, nodes_[j]]
  double edge_rho_inner_ = 0.0;      // density at upper()
  double edge_slope_ = 0.0;          // d(rho^2)/dtheta across the band
  double edge_mass_ = 0.0;           // mass of [upper(), half_width]
};

/// Convenience wrappers; each builds a SpectralMeasure.
double density(double t, double theta);
double cdf(double t, double theta);
double quantile(double t, double r);
/// Defined for t in [0, 4); t = 0 gives 1 for every r.
cplx classical_location(double t, double r);

/// Semicircle law on [-2, 2].
double semicircle_density(double x);
double semicircle_cdf(double x);
double semicircle_quantile(double r);

/// f_t(x) = exp(i F_{nu_t}^{-1}(F_semicircle(x))), x clamped to [-2, 2].
cplx pushforward_ft(const SpectralMeasure& nu, double x);
cplx pushforward_ft(double t, double x);

/// Law of q u* p u q for free projections of traces alpha, beta and a free Haar u.
class FreeJacobiLaw {
 public:
  FreeJacobiLaw(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double atom0() const { return atom0_; }
  double atom1() const { return atom1_; }
  double r_minus() const { return r_minus_; }
  double r_plus() const { return r_plus_; }

  /// Continuous part, sqrt((r+ - x)(x - r-)) / (2 pi x (1 - x)) on [r-, r+].
  double density(double x) const;
  /// Mass of the continuous part on [r-, min(x, r+)] by quadrature.
  double continuous_cdf(double x) const;
  double continuous_mass() const { return continuous_cdf(r_plus_); }
  /// P(X <= x), atoms included.
  double cdf(double x) const;
  /// P(X < x).
  double cdf_left(double x) const;

 private:
  double alpha_, beta_;
  double atom0_, atom1_;
  double r_minus_, r_plus_;
};

FreeJacobiLaw free_jacobi_law(double alpha, double beta);

}  // namespace ubmlab::freemeasure
