#include "ubmlab/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ubmlab/errors.hpp"

namespace ubmlab::stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw ContractError("mean: empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stddev(std::span<const double> xs) {
  if (xs.size() < 2) throw ContractError("stddev: need at least two values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double standard_error(std::span<const double> xs) {
  return stddev(xs) / std::sqrt(static_cast<double>(xs.size()));
}

double quantile(std::vector<double> xs, double p) {
  if (xs.empty()) throw ContractError("quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile: p must lie in [0, 1]");
  std::sort(xs.begin(), xs.end());
  const double h = p * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  // Theta-function form converges faster for small lambda.
  if (lambda < 1.0) {
    constexpr double kPi = 3.14159265358979323846;
    const double q = std::exp(-kPi * kPi / (8.0 * lambda * lambda));
    double sum = 0.0;
    for (int k = 1; k < 50; k += 2) {
      const double term = std::pow(q, k * k);
      sum += term;
      if (term < 1e-18) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * kPi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ContractError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double root = std::sqrt(ne);
  return {d, kolmogorov_survival((root + 0.12 + 0.11 / root) * d), a.size(), b.size()};
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left) {
  if (sample.empty()) throw ContractError("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sample.size()) {
    const double x = sample[i];
    const double below = static_cast<double>(i) / n;
    while (i < sample.size() && sample[i] == x) ++i;
    const double upto = static_cast<double>(i) / n;
    d = std::max({d, std::abs(upto - cdf(x)), std::abs(below - cdf_left(x))});
  }
  return d;
}

}  // namespace ubmlab::stats
