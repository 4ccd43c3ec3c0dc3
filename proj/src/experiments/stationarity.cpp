#include <cmath>

#include "common.hpp"
#include "ubmlab/statistics.hpp"

namespace ubmlab::experiments {

namespace {

ExperimentReport ks_report(std::string name, std::vector<double> a, std::vector<double> b, int trials) {
  const auto ks = stats::ks_two_sample(std::move(a), std::move(b));
  ExperimentReport r;
  r.name = std::move(name);
  r.set_scalar("ks_statistic", ks.statistic);
  r.set_scalar("p_value", ks.p_value);
  r.set_scalar("n1", static_cast<double>(ks.n1));
  r.set_scalar("n2", static_cast<double>(ks.n2));
  // Too few trials for the asymptotic test to mean much: report, do not assert.
  if (trials >= kMinKsTrials) {
    r.add_criterion("ks_pass_at_1_percent", ks.p_value > kKsLevel, ks.p_value - kKsLevel);
  }
  return r;
}

}  // namespace

ExperimentReport increment_stationarity_check(int N, double s, double t, int trials, const RunOptions& opts) {
  detail::require_dimension(N, "increment_stationarity_check");
  detail::require_trials(trials, "increment_stationarity_check");
  detail::require_time(s, "increment_stationarity_check");
  if (!(t > s) || !std::isfinite(t)) throw DomainError("increment_stationarity_check: need 0 <= s < t");

  std::vector<std::vector<double>> increment(static_cast<std::size_t>(trials));
  std::vector<std::vector<double>> fresh(static_cast<std::size_t>(trials));
  parallel_for(trials, opts.threads, [&](int i) {
    auto path_rng = detail::stream(opts, i, 2, 0);
    auto fresh_rng = detail::stream(opts, i, 2, 1);
    const auto path = rmt::ubm_sample_path(N, {s, t}, opts.step, path_rng, opts.scheme);
    increment[static_cast<std::size_t>(i)] = rmt::eigangles(path.matrices[0].adjoint() * path.matrices[1]);
    fresh[static_cast<std::size_t>(i)] = rmt::eigangles(rmt::ubm_at(N, t - s, opts.step, fresh_rng, opts.scheme));
  });

  std::vector<double> a, b;
  for (int i = 0; i < trials; ++i) {
    a.insert(a.end(), increment[static_cast<std::size_t>(i)].begin(), increment[static_cast<std::size_t>(i)].end());
    b.insert(b.end(), fresh[static_cast<std::size_t>(i)].begin(), fresh[static_cast<std::size_t>(i)].end());
  }
  auto r = ks_report("increment_stationarity", std::move(a), std::move(b), trials);
  r.params = {{"N", N}, {"s", s}, {"t", t}, {"trials", trials}};
  r.params.update(detail::run_params(opts));
  return r;
}

ExperimentReport inverse_symmetry_check(int N, double t, int trials, const RunOptions& opts) {
  detail::require_dimension(N, "inverse_symmetry_check");
  detail::require_trials(trials, "inverse_symmetry_check");
  detail::require_time(t, "inverse_symmetry_check");

  std::vector<std::vector<double>> inverse(static_cast<std::size_t>(trials));
  std::vector<std::vector<double>> direct(static_cast<std::size_t>(trials));
  parallel_for(trials, opts.threads, [&](int i) {
    auto a_rng = detail::stream(opts, i, 2, 0);
    auto b_rng = detail::stream(opts, i, 2, 1);
    inverse[static_cast<std::size_t>(i)] = rmt::eigangles(rmt::ubm_at(N, t, opts.step, a_rng, opts.scheme).adjoint());
    direct[static_cast<std::size_t>(i)] = rmt::eigangles(rmt::ubm_at(N, t, opts.step, b_rng, opts.scheme));
  });

  std::vector<double> a, b;
  for (int i = 0; i < trials; ++i) {
    a.insert(a.end(), inverse[static_cast<std::size_t>(i)].begin(), inverse[static_cast<std::size_t>(i)].end());
    b.insert(b.end(), direct[static_cast<std::size_t>(i)].begin(), direct[static_cast<std::size_t>(i)].end());
  }
  auto r = ks_report("inverse_symmetry", std::move(a), std::move(b), trials);
  r.params = {{"N", N}, {"t", t}, {"trials", trials}};
  r.params.update(detail::run_params(opts));
  return r;
}

}  // namespace ubmlab::experiments
