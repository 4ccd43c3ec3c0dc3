#include <cmath>

#include "common.hpp"
#include "ubmlab/freemeasure.hpp"
#include "ubmlab/statistics.hpp"

namespace ubmlab::experiments {

ExperimentReport coupling_experiment(int N, double t, int trials, const RunOptions& opts) {
  detail::require_dimension(N, "coupling_experiment");
  detail::require_trials(trials, "coupling_experiment");
  if (!(t > 0.0 && t < 4.0)) throw DomainError("coupling_experiment: t must lie in (0, 4)");

  const freemeasure::SpectralMeasure nu(t);
  std::vector<double> distance(static_cast<std::size_t>(trials));
  parallel_for(trials, opts.threads, [&](int i) {
    auto unitary_rng = detail::stream(opts, i, 2, 0);
    auto gue_rng = detail::stream(opts, i, 2, 1);
    const auto angles = rmt::eigangles(rmt::ubm_at(N, t, opts.step, unitary_rng, opts.scheme));
    const auto x = rmt::hermitian_eigenvalues(rmt::sample_gue(N, gue_rng).matrix);
    double c = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      c = std::max(c, std::abs(freemeasure::pushforward_ft(nu, x[k]) - std::polar(1.0, angles[k])));
    }
    distance[static_cast<std::size_t>(i)] = c;
  });

  ExperimentReport r;
  r.name = "coupling";
  r.params = {{"N", N}, {"t", t}, {"trials", trials}};
  r.params.update(detail::run_params(opts));
  r.set_scalar("median", stats::median(distance));
  r.set_scalar("p90", stats::quantile(distance, 0.9));
  r.set_scalar("max", *std::max_element(distance.begin(), distance.end()));
  Table table;
  table.columns = {"trial", "max_distance"};
  for (std::size_t i = 0; i < distance.size(); ++i) table.rows.push_back({static_cast<std::int64_t>(i), distance[i]});
  r.tables.emplace_back("trials", std::move(table));
  return r;
}

}  // namespace ubmlab::experiments
