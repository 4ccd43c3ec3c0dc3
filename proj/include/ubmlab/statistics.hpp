#pragma once

// Small descriptive statistics and Kolmogorov-Smirnov tests.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ubmlab::stats {

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator).
double stddev(std::span<const double> xs);
/// stddev / sqrt(n)
double standard_error(std::span<const double> xs);
/// Linear interpolation between order statistics (p in [0, 1]).
double quantile(std::vector<double> xs, double p);
double median(std::vector<double> xs);

/// P(K > lambda) for the Kolmogorov limit distribution.
double kolmogorov_survival(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

/// Two-sample statistic sup |F1 - F2| with the asymptotic p-value
/// (effective size n1 n2 / (n1 + n2), with the usual small-sample correction).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// sup_x |F_n(x) - F(x)| for a law that may have atoms. cdf(x) = P(X <= x),
/// cdf_left(x) = P(X < x).
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left);

}  // namespace ubmlab::stats
