#pragma once

// Monte Carlo and exact harnesses: hard edge, moment bounds, GUE coupling,
// Jacobi process islands, long-time Jacobi law, increment stationarity.
//
// Every stochastic harness is a pure function of its parameters and seed.
// Trial i draws from RngStream(seed, i * streams_per_trial + k), and results are
// reduced in trial order, so the thread count never changes the output.

#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <vector>

#include "ubmlab/report.hpp"
#include "ubmlab/rmt.hpp"

namespace ubmlab::experiments {

struct RunOptions {
  std::uint64_t seed = 0;
  /// 0 picks UBMLAB_THREADS, then the hardware count.
  int threads = 0;
  double step = rmt::kDefaultStep;
  rmt::Scheme scheme = rmt::Scheme::Geodesic;
};

int resolve_threads(int requested);

/// Runs body(i) for i in [0, count) on up to `threads` workers. The first
/// exception by index is rethrown after all workers finish.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

inline constexpr int kArcGridPoints = 10000;

/// Chordal Hausdorff distance between {e^{i theta_k}} and the arc |phi| <= half_width.
double hausdorff_to_arc(std::span<const double> angles, double half_width);

/// max_k |e^{i a_k} - e^{i b_k}| for two equally long angle lists.
double sorted_pair_distance(std::span<const double> a, std::span<const double> b);

ExperimentReport hard_edge_experiment(int N, double t, int trials, const RunOptions& opts);

ExperimentReport moment_table(int n_max, const std::vector<int>& N_list, const std::vector<double>& t_list);

ExperimentReport coupling_experiment(int N, double t, int trials, const RunOptions& opts);

struct ProjectionPair {
  int N = 0;
  rmt::CMatrix P, Q;
  int rank_p = 0, rank_q = 0;
};

/// Validates P, Q as orthogonal projections (to 1e-10) with integral traces.
ProjectionPair make_projection_pair(const rmt::CMatrix& P, const rmt::CMatrix& Q);

/// 4x4 pair whose compression Q P Q has the nontrivial eigenvalues 0.2 and 0.8.
ProjectionPair example_projection_pair();

/// Times must be nonnegative and ascending.
ExperimentReport jacobi_path_experiment(int k, int N, const rmt::CMatrix& P_small, const rmt::CMatrix& Q_small,
                                        const std::vector<double>& t_list, int trials, const RunOptions& opts);

/// With haar = true the evolved unitary is replaced by a Haar unitary and t_large is ignored.
ExperimentReport jacobi_longtime_experiment(double alpha, double beta, int N, double t_large, int trials, bool haar,
                                            const RunOptions& opts);

inline constexpr int kMinKsTrials = 100;
inline constexpr double kKsLevel = 0.01;

/// Eigenangles of U_s^{-1} U_t against those of a fresh U_{t-s}; requires 0 <= s < t.
ExperimentReport increment_stationarity_check(int N, double s, double t, int trials, const RunOptions& opts);

/// Eigenangles of U_t^{-1} against those of an independent U_t.
ExperimentReport inverse_symmetry_check(int N, double t, int trials, const RunOptions& opts);

}  // namespace ubmlab::experiments
