#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ubmlab/errors.hpp"
#include "ubmlab/freemeasure.hpp"
#include "ubmlab/symflow.hpp"

using namespace ubmlab;
using namespace ubmlab::freemeasure;
using std::numbers::pi;

namespace {

double residual(double t, double theta, cplx z) {
  return std::abs((z - 1.0) / (z + 1.0) * std::exp(0.5 * t * z) - std::polar(1.0, theta));
}

// The solution curve parametrised by x = Re z in (0, x0]: taking moduli of the
// defining equation gives y^2 = Im z^2 explicitly, and theta is then the argument.
struct CurvePoint {
  cplx z;
  double theta;
};

CurvePoint curve_point(double t, double x) {
  const double e = std::exp(-t * x);
  const double y2 = (e * (x + 1) * (x + 1) - (x - 1) * (x - 1)) / (1.0 - e);
  const cplx z(x, std::sqrt(std::max(0.0, y2)));
  return {z, std::arg((z - 1.0) / (z + 1.0)) + 0.5 * t * z.imag()};
}

// Reference integral of f over [a, b] by double-exponential quadrature.
template <class F>
double integrate(F f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b, 1e-13);
}

}  // namespace

TEST(SupportHalfwidth, Values) {
  EXPECT_NEAR(support_halfwidth(1.0), 1.9132, 5e-5);
  EXPECT_DOUBLE_EQ(support_halfwidth(4.0), pi);
  EXPECT_DOUBLE_EQ(support_halfwidth(9.0), pi);
  EXPECT_EQ(support_halfwidth(0.0), 0.0);
  EXPECT_NEAR(support_halfwidth(2.0), 1.0 + pi / 2.0, 1e-15);
  EXPECT_THROW(support_halfwidth(-0.1), DomainError);
}

TEST(Kappa, RealAtZero) {
  for (double t : {0.1, 1.0, 3.0, 6.0}) {
    const cplx z = kappa(t, 0.0);
    EXPECT_EQ(z.imag(), 0.0);
    EXPECT_GT(z.real(), 1.0);
    EXPECT_LT(residual(t, 0.0, z), 1e-12);
  }
}

TEST(Kappa, ConjugateSymmetric) {
  for (double t : {0.5, 1.0, 3.5}) {
    for (double theta : {0.1, 0.7, 1.3}) {
      if (theta >= support_halfwidth(t)) continue;
      const cplx a = kappa(t, theta), b = kappa(t, -theta);
      EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-13);
    }
  }
}

TEST(Kappa, ResidualAndGridSearch) {
  const double t = 1.0, theta = 1.0;
  const cplx z = kappa(t, theta);
  EXPECT_LT(residual(t, theta, z), 1e-12);
  EXPECT_GT(z.real(), 0.0);

  // Brute-force minimum of the residual over Re z in (0, 10], Im z in [-10, 10].
  const double h = 0.01;
  double best = INFINITY;
  cplx arg_best;
  for (int i = 1; i <= 1000; ++i) {
    for (int j = -1000; j <= 1000; ++j) {
      const cplx w(i * h, j * h);
      const double r = residual(t, theta, w);
      if (r < best) {
        best = r;
        arg_best = w;
      }
    }
  }
  EXPECT_LT(std::abs(arg_best - z), 2 * h);
}

TEST(Kappa, MatchesParametricCurve) {
  for (double t : {0.25, 1.0, 2.0, 3.9}) {
    const double x0 = kappa(t, 0.0).real();
    for (double frac : {0.02, 0.1, 0.3, 0.5, 0.8, 0.97}) {
      const auto p = curve_point(t, frac * x0);
      ASSERT_LT(p.theta, support_halfwidth(t));
      const cplx z = kappa(t, p.theta);
      EXPECT_NEAR(std::abs(z - p.z), 0.0, 1e-9) << "t=" << t << " x=" << frac * x0;
    }
  }
}

TEST(Kappa, CurveReachesTheEdge) {
  // As x -> 0 the curve tends to the support endpoint: y^2 -> (4 - t)/t, theta -> a(t).
  for (double t : {0.5, 1.0, 3.0}) {
    const auto p = curve_point(t, 1e-7);
    EXPECT_NEAR(p.z.imag() * p.z.imag(), (4.0 - t) / t, 1e-5);
    EXPECT_NEAR(p.theta, support_halfwidth(t), 1e-6);
  }
}

TEST(Kappa, RejectsOutsideArc) {
  EXPECT_THROW(kappa(1.0, 2.0), DomainError);
  EXPECT_THROW(kappa(1.0, support_halfwidth(1.0)), DomainError);
  EXPECT_THROW(kappa(0.0, 0.1), DomainError);
  EXPECT_THROW(kappa(-1.0, 0.0), DomainError);
  EXPECT_NO_THROW(kappa(5.0, pi));
}

TEST(Density, CentreIsRealRoot) {
  for (double t : {0.25, 1.0, 3.0}) {
    SpectralMeasure nu(t);
    EXPECT_NEAR(nu.density(0.0), kappa(t, 0.0).real(), 1e-13);
  }
}

TEST(Density, SymmetricNonnegativeAndSupported) {
  for (double t : {0.25, 1.0, 3.9}) {
    SpectralMeasure nu(t);
    const double a = nu.half_width();
    for (int j = 1; j < 10000; ++j) {
      const double theta = -a + 2.0 * a * j / 10000.0;
      const double rho = nu.density(theta);
      EXPECT_GE(rho, 0.0);
      EXPECT_NEAR(rho, nu.density(-theta), 1e-10);
    }
    EXPECT_EQ(nu.density(a + 1e-3), 0.0);
    EXPECT_EQ(nu.density(-a - 1e-3), 0.0);
    EXPECT_EQ(nu.density(pi), 0.0);
  }
}

TEST(Density, AgreesWithParametricCurve) {
  // The grid evaluator and the explicit curve must give the same Re kappa.
  for (double t : {0.5, 2.0}) {
    SpectralMeasure nu(t);
    const double x0 = kappa(t, 0.0).real();
    for (double frac : {0.05, 0.4, 0.9}) {
      const auto p = curve_point(t, frac * x0);
      EXPECT_NEAR(nu.density(p.theta), p.z.real(), 1e-10);
      EXPECT_NEAR(nu.density_per_radian(p.theta), p.z.real() / (2 * pi), 1e-10);
    }
  }
}

TEST(Density, EdgeBandIsContinuous) {
  for (double t : {0.5, 1.0, 3.5}) {
    SpectralMeasure nu(t);
    const double a = nu.half_width();
    const double inside = nu.density(a - SpectralMeasure::kEdgeBand - 1e-9);
    const double band = nu.density(a - SpectralMeasure::kEdgeBand + 1e-9);
    EXPECT_NEAR(inside, band, 1e-6);
    // square-root edge: rho(a - h) ~ c sqrt(h) matches the solved value at h = 4e-4
    const double c = band / std::sqrt(SpectralMeasure::kEdgeBand);
    EXPECT_NEAR(nu.density(a - 5e-5), c * std::sqrt(5e-5), 1e-4);
  }
}

TEST(Density, Normalized) {
  for (double t : {0.5, 1.0, 2.0, 3.5}) {
    SpectralMeasure nu(t);
    const double a = nu.half_width();
    const double mass = integrate([&](double th) { return nu.density(th); }, -a, a) / (2 * pi);
    EXPECT_NEAR(mass, 1.0, 1e-6) << "t=" << t;
    EXPECT_NEAR(nu.total_mass(), 1.0, 1e-6) << "t=" << t;
  }
}

TEST(Density, FullCircleRegime) {
  for (double t : {4.5, 8.0}) {
    SpectralMeasure nu(t);
    EXPECT_FALSE(nu.has_edge());
    EXPECT_GT(nu.density(pi), 0.0);
    EXPECT_NEAR(nu.density(pi), nu.density(-pi + 1e-12), 1e-9);
    const double mass = integrate([&](double th) { return nu.density(th); }, -pi, pi) / (2 * pi);
    EXPECT_NEAR(mass, 1.0, 1e-9);
    EXPECT_NEAR(nu.cdf(pi / 2), 1.0 - nu.cdf(-pi / 2), 1e-12);
  }
  // Large t approaches Haar measure.
  SpectralMeasure late(kMaxTime);
  EXPECT_NEAR(late.density(1.0), 1.0, 1e-3);
  EXPECT_NEAR(late.density(pi), 1.0, 1e-3);
  EXPECT_THROW(SpectralMeasure(kMaxTime + 1.0), DomainError);
}

TEST(Density, MomentsMatchFreeFlow) {
  for (double t : {0.5, 1.0, 2.0}) {
    SpectralMeasure nu(t);
    const double a = nu.half_width();
    for (int n = 1; n <= 8; ++n) {
      const double reference = symflow::free_moment(n, t);
      const double quad = integrate([&](double th) { return std::cos(n * th) * nu.density(th); }, -a, a) / (2 * pi);
      EXPECT_NEAR(quad, reference, 1e-6) << "n=" << n << " t=" << t;
      EXPECT_NEAR(nu.trig_moment(n), reference, 1e-6) << "n=" << n << " t=" << t;
    }
  }
}

TEST(Cdf, MatchesIndependentQuadrature) {
  SpectralMeasure nu(1.0);
  for (double theta : {-1.8, -0.9, 0.0, 0.3, 1.2, 1.9}) {
    const double ref = 0.5 + (theta >= 0 ? 1.0 : -1.0) *
                                 integrate([&](double th) { return nu.density(th); }, 0.0, std::abs(theta)) / (2 * pi);
    EXPECT_NEAR(nu.cdf(theta), ref, 1e-10) << theta;
  }
}

TEST(Cdf, EndpointsAndMonotone) {
  for (double t : {0.5, 1.0, 3.5}) {
    SpectralMeasure nu(t);
    const double a = nu.half_width();
    EXPECT_EQ(nu.cdf(a), 1.0);
    EXPECT_EQ(nu.cdf(-a), 0.0);
    EXPECT_EQ(nu.cdf(3.0 + a), 1.0);
    EXPECT_DOUBLE_EQ(nu.cdf(0.0), 0.5);
    double prev = nu.cdf(-a + 0.01);
    for (int j = 1; j <= 2000; ++j) {
      const double theta = -a + 0.01 + (2 * a - 0.02) * j / 2000.0;
      const double c = nu.cdf(theta);
      EXPECT_GT(c - prev, 1e-12) << theta;
      prev = c;
    }
  }
}

TEST(Quantile, RoundTripAndEndpoints) {
  for (double t : {0.25, 1.0, 2.0, 3.5, 6.0}) {
    SpectralMeasure nu(t);
    EXPECT_EQ(nu.quantile(0.5), 0.0);
    EXPECT_EQ(nu.quantile(0.0), -nu.half_width());
    EXPECT_EQ(nu.quantile(1.0), nu.half_width());
    for (int k = 1; k <= 9; ++k) {
      const double r = k / 10.0;
      EXPECT_NEAR(nu.cdf(nu.quantile(r)), r, 1e-8) << "t=" << t << " r=" << r;
    }
    for (double r : {1e-6, 1e-3, 0.999, 1 - 1e-7}) EXPECT_NEAR(nu.cdf(nu.quantile(r)), r, 1e-8);
    EXPECT_NEAR(nu.quantile(0.3), -nu.quantile(0.7), 1e-14);
  }
  EXPECT_THROW(quantile(1.0, 1.5), DomainError);
  EXPECT_THROW(quantile(1.0, -0.1), DomainError);
  EXPECT_DOUBLE_EQ(quantile(1.0, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(cdf(1.0, support_halfwidth(1.0)), 1.0);
}

TEST(ClassicalLocation, Conventions) {
  for (double t : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(std::abs(classical_location(t, 0.5) - cplx(1.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(classical_location(t, 1.0) - std::polar(1.0, support_halfwidth(t))), 0.0, 1e-15);
  }
  EXPECT_NEAR(std::arg(classical_location(1.0, 0.0)), -1.9132, 5e-5);
  EXPECT_EQ(classical_location(0.0, 0.2), cplx(1.0, 0.0));
  EXPECT_THROW(classical_location(4.0, 0.5), DomainError);
  EXPECT_THROW(classical_location(1.0, 1.1), DomainError);
}

TEST(Semicircle, Basics) {
  EXPECT_DOUBLE_EQ(semicircle_cdf(0.0), 0.5);
  EXPECT_EQ(semicircle_cdf(2.0), 1.0);
  EXPECT_EQ(semicircle_cdf(-2.0), 0.0);
  EXPECT_EQ(semicircle_cdf(7.0), 1.0);
  for (double x : {-1.5, -0.5, 0.7, 1.99}) EXPECT_NEAR(semicircle_quantile(semicircle_cdf(x)), x, 1e-10);
  EXPECT_THROW(semicircle_quantile(2.0), DomainError);
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  for (double x : {-1.2, 0.4, 1.7}) {
    EXPECT_NEAR(semicircle_cdf(x), gk.integrate(semicircle_density, -2.0, x, 15, 1e-13), 1e-10);
  }
}

TEST(Pushforward, EndpointsAndMonotone) {
  SpectralMeasure nu(1.0);
  EXPECT_NEAR(std::abs(pushforward_ft(nu, 0.0) - cplx(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(pushforward_ft(nu, 2.0) - std::polar(1.0, nu.half_width())), 0.0, 1e-15);
  EXPECT_EQ(pushforward_ft(nu, 5.0), pushforward_ft(nu, 2.0));
  double prev = -INFINITY;
  for (int j = 0; j <= 1000; ++j) {
    const double arg = std::arg(pushforward_ft(nu, -2.0 + 4.0 * j / 1000.0));
    EXPECT_GE(arg, prev);
    prev = arg;
  }
  EXPECT_THROW(pushforward_ft(4.0, 0.1), DomainError);
}

TEST(Pushforward, TransportsSemicircleToNu) {
  const double t = 1.0;
  SpectralMeasure nu(t);
  const int m = 100000;
  std::vector<double> angles;
  angles.reserve(m);
  for (int i = 0; i < m; ++i) angles.push_back(std::arg(pushforward_ft(nu, semicircle_quantile((i + 0.5) / m))));
  // angles are nondecreasing, so the empirical CDF at angles[i] is (i + 1) / m
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    const double c = nu.cdf(angles[i]);
    worst = std::max({worst, std::abs((i + 1.0) / m - c), std::abs(static_cast<double>(i) / m - c)});
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(FreeJacobi, SymmetricCase) {
  const auto law = free_jacobi_law(0.5, 0.5);
  EXPECT_DOUBLE_EQ(law.atom0(), 0.5);
  EXPECT_EQ(law.atom1(), 0.0);
  EXPECT_EQ(law.r_minus(), 0.0);
  EXPECT_EQ(law.r_plus(), 1.0);
  for (int j = 1; j < 99; ++j) {
    const double x = j / 100.0;
    EXPECT_NEAR(law.density(x), 1.0 / (2 * pi * std::sqrt(x * (1 - x))), 1e-10);
  }
}

TEST(FreeJacobi, ThreeQuarters) {
  const auto law = free_jacobi_law(0.75, 0.75);
  EXPECT_DOUBLE_EQ(law.atom0(), 0.25);
  EXPECT_DOUBLE_EQ(law.atom1(), 0.5);
  EXPECT_EQ(law.r_minus(), 0.0);
  EXPECT_NEAR(law.r_plus(), 0.75, 1e-15);
}

TEST(FreeJacobi, TotalMass) {
  for (auto [a, b] : {std::pair{0.5, 0.5}, {0.75, 0.25}, {0.9, 0.3}, {0.75, 0.75}, {0.2, 0.6}}) {
    const auto law = free_jacobi_law(a, b);
    EXPECT_GE(law.r_minus(), 0.0);
    EXPECT_LE(law.r_plus(), 1.0);
    EXPECT_NEAR(law.atom0() + law.atom1() + law.continuous_mass(), 1.0, 1e-6) << a << " " << b;
    const double quad = integrate([&](double x) { return law.density(x); }, law.r_minus(), law.r_plus());
    EXPECT_NEAR(law.continuous_mass(), quad, 1e-8) << a << " " << b;
  }
}

TEST(FreeJacobi, CdfShape) {
  const auto law = free_jacobi_law(0.9, 0.3);
  EXPECT_EQ(law.cdf(-0.1), 0.0);
  EXPECT_EQ(law.cdf_left(0.0), 0.0);
  EXPECT_DOUBLE_EQ(law.cdf(0.0), law.atom0());
  EXPECT_NEAR(law.cdf(1.0), 1.0, 1e-9);
  EXPECT_NEAR(law.cdf_left(1.0), 1.0 - law.atom1(), 1e-9);
  double prev = 0.0;
  for (int j = 0; j <= 200; ++j) {
    const double c = law.cdf(j / 200.0);
    EXPECT_GE(c, prev);
    prev = c;
  }
  EXPECT_THROW(free_jacobi_law(0.0, 0.5), DomainError);
  EXPECT_THROW(free_jacobi_law(0.5, 1.0), DomainError);
}
