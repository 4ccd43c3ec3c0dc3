#include <algorithm>
#include <cmath>
#include <numbers>

#include "common.hpp"
#include "ubmlab/freemeasure.hpp"
#include "ubmlab/statistics.hpp"

namespace ubmlab::experiments {

namespace {

constexpr double kMargins[] = {0.02, 0.05, 0.1};
constexpr double kCriterionMargin = 0.05;
constexpr int kAngleBins = 1000;

}  // namespace

ExperimentReport hard_edge_experiment(int N, double t, int trials, const RunOptions& opts) {
  detail::require_dimension(N, "hard_edge_experiment");
  detail::require_time(t, "hard_edge_experiment");
  detail::require_trials(trials, "hard_edge_experiment");

  std::vector<std::vector<double>> angles(static_cast<std::size_t>(trials));
  parallel_for(trials, opts.threads, [&](int i) {
    auto rng = detail::stream(opts, i);
    angles[static_cast<std::size_t>(i)] = rmt::eigangles(rmt::ubm_at(N, t, opts.step, rng, opts.scheme));
  });

  const double a = freemeasure::support_halfwidth(t);
  ExperimentReport r;
  r.name = "hard_edge";
  r.params = {{"N", N}, {"t", t}, {"trials", trials}};
  r.params.update(detail::run_params(opts));
  r.params["metric"] = "chordal";

  Histogram hist(-std::numbers::pi, std::numbers::pi, kAngleBins);
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(N) * static_cast<std::size_t>(trials));
  std::vector<double> per_trial_hausdorff;
  for (const auto& trial : angles) {
    for (double x : trial) {
      hist.add(x);
      pooled.push_back(x);
    }
    per_trial_hausdorff.push_back(hausdorff_to_arc(trial, a));
  }

  const auto [lo, hi] = std::minmax_element(pooled.begin(), pooled.end());
  double max_abs = 0.0;
  for (double x : pooled) max_abs = std::max(max_abs, std::abs(x));

  r.set_scalar("support_halfwidth", a);
  r.set_scalar("min_angle", *lo);
  r.set_scalar("max_angle", *hi);
  r.set_scalar("max_abs_angle", max_abs);
  r.set_scalar("hausdorff_pooled", hausdorff_to_arc(pooled, a));
  r.set_scalar("hausdorff_trial_max", *std::max_element(per_trial_hausdorff.begin(), per_trial_hausdorff.end()));
  r.set_scalar("hausdorff_trial_median", stats::median(per_trial_hausdorff));
  for (double m : kMargins) {
    const auto outside = std::count_if(pooled.begin(), pooled.end(), [&](double x) { return std::abs(x) > a + m; });
    r.set_scalar("outside_margin_" + short_number(m), static_cast<double>(outside));
  }
  r.histograms.emplace_back("angles", hist);

  // For t >= 4 the support is the whole circle and there is nothing to fail.
  if (t < 4.0) {
    r.add_criterion("no_eigenvalues_outside_arc_plus_0.05", max_abs <= a + kCriterionMargin,
                    a + kCriterionMargin - max_abs);
    const double gap = std::abs(max_abs - a);
    r.add_criterion("max_abs_angle_within_0.05_of_edge", gap <= kCriterionMargin, kCriterionMargin - gap);
  }
  return r;
}

}  // namespace ubmlab::experiments
