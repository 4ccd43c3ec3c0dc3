#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "common.hpp"
#include "ubmlab/freemeasure.hpp"
#include "ubmlab/statistics.hpp"

namespace ubmlab::experiments {

namespace {

constexpr double kProjectionTolerance = 1e-10;
constexpr double kUnitIntervalSlack = 1e-10;
constexpr double kAtomThreshold = 1e-6;
constexpr double kIslandDeltas[] = {0.05, 0.1};
constexpr double kBandLo = 0.3, kBandHi = 0.7;
constexpr int kJacobiBins = 1000;

constexpr double kLongtimeKsMax = 0.08;
constexpr double kAtomTolerance = 0.05;

using rmt::CMatrix;

int checked_rank(const CMatrix& m, const char* label) {
  if (m.rows() != m.cols() || m.rows() == 0) throw ContractError(std::string(label) + " must be square and nonempty");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const double idem = (m * m - m).cwiseAbs().maxCoeff();
  if (herm > kProjectionTolerance || idem > kProjectionTolerance) {
    throw ContractError(std::string(label) + " is not an orthogonal projection");
  }
  const double tr = m.trace().real();
  const double rounded = std::round(tr);
  if (std::abs(tr - rounded) > 1e-8) throw ContractError(std::string(label) + " has non-integral trace");
  return static_cast<int>(rounded);
}

// Orthonormal basis of the range of a projection.
CMatrix range_basis(const CMatrix& q, int rank) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(q);
  if (eig.info() != Eigen::Success) throw NumericError("range_basis: eigensolver failed");
  // eigenvalues ascending, so the rank-many ones sit at the end
  return eig.eigenvectors().rightCols(rank);
}

CMatrix kron_identity(const CMatrix& small, int N) {
  const Eigen::Index rows = small.rows() * N, cols = small.cols() * N;
  CMatrix out = CMatrix::Zero(rows, cols);
  for (Eigen::Index a = 0; a < small.rows(); ++a) {
    for (Eigen::Index b = 0; b < small.cols(); ++b) {
      if (small(a, b) == rmt::cplx(0.0)) continue;
      out.block(a * N, b * N, N, N).diagonal().setConstant(small(a, b));
    }
  }
  return out;
}

double distance_to_set(double x, const std::vector<double>& set) {
  double d = INFINITY;
  for (double s : set) d = std::min(d, std::abs(x - s));
  return d;
}

}  // namespace

ProjectionPair make_projection_pair(const CMatrix& P, const CMatrix& Q) {
  if (P.rows() != Q.rows() || P.cols() != Q.cols()) throw ContractError("projection pair: P and Q differ in shape");
  ProjectionPair pair;
  pair.rank_p = checked_rank(P, "P");
  pair.rank_q = checked_rank(Q, "Q");
  pair.N = static_cast<int>(P.rows());
  pair.P = P;
  pair.Q = Q;
  return pair;
}

ProjectionPair example_projection_pair() {
  // P = A (x) e11 + B (x) e22 on C^2 (x) C^2 (index 2a + b), Q = e11 (x) I.
  // A and B are the rank-one projections onto (1, 2)/sqrt5 and (2, 1)/sqrt5,
  // so the compression of P to the range of Q is diag(0.2, 0.8).
  CMatrix p = CMatrix::Zero(4, 4);
  const double a[2][2] = {{0.2, 0.4}, {0.4, 0.8}};
  const double b[2][2] = {{0.8, 0.4}, {0.4, 0.2}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      p(2 * i, 2 * j) = a[i][j];
      p(2 * i + 1, 2 * j + 1) = b[i][j];
    }
  }
  CMatrix q = CMatrix::Zero(4, 4);
  q(0, 0) = q(1, 1) = 1.0;
  return make_projection_pair(p, q);
}

ExperimentReport jacobi_path_experiment(int k, int N, const CMatrix& P_small, const CMatrix& Q_small,
                                        const std::vector<double>& t_list, int trials, const RunOptions& opts) {
  detail::require_dimension(N, "jacobi_path_experiment");
  detail::require_trials(trials, "jacobi_path_experiment");
  if (t_list.empty()) throw DomainError("jacobi_path_experiment: empty t list");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    detail::require_time(t_list[i], "jacobi_path_experiment");
    if (i > 0 && t_list[i] <= t_list[i - 1]) throw ContractError("jacobi_path_experiment: times must be ascending");
  }
  const auto small = make_projection_pair(P_small, Q_small);
  if (small.N != k) throw ContractError("jacobi_path_experiment: P and Q must be k x k");
  if (small.rank_q == 0) throw ContractError("jacobi_path_experiment: Q must be nonzero");

  const CMatrix basis_small = range_basis(Q_small, small.rank_q);
  const CMatrix P = kron_identity(P_small, N);
  const CMatrix B = kron_identity(basis_small, N);

  // Distinct eigenvalues of the initial compression.
  std::vector<double> initial = rmt::hermitian_eigenvalues(basis_small.adjoint() * P_small * basis_small);
  initial.erase(std::unique(initial.begin(), initial.end(), [](double x, double y) { return std::abs(x - y) < 1e-9; }),
                initial.end());

  const std::size_t times = t_list.size();
  // eigen[i][j]: nonzero-block eigenvalues of trial i at time j
  std::vector<std::vector<std::vector<double>>> eigen(static_cast<std::size_t>(trials));
  parallel_for(trials, opts.threads, [&](int i) {
    auto rng = detail::stream(opts, i);
    const auto path = rmt::ubm_sample_path(k * N, t_list, opts.step, rng, opts.scheme);
    auto& out = eigen[static_cast<std::size_t>(i)];
    for (const auto& u : path.matrices) {
      const CMatrix w = u * B;
      out.push_back(rmt::hermitian_eigenvalues(w.adjoint() * P * w));
    }
  });

  ExperimentReport r;
  r.name = "jacobi_path";
  r.params = {{"k", k}, {"N", N}, {"t_list", t_list}, {"trials", trials}};
  r.params.update(detail::run_params(opts));
  r.params["initial_spectrum"] = initial;
  r.set_scalar("zero_block_dimension", static_cast<double>((k - small.rank_q) * N));
  r.set_scalar("nonzero_block_dimension", static_cast<double>(small.rank_q * N));

  double lowest = INFINITY, highest = -INFINITY;
  Table table;
  table.columns = {"t", "island_fraction_0.05", "island_fraction_0.1", "trials_all_within_0.05",
                   "trials_all_within_0.1", "trials_band_nonempty", "median_max_distance"};
  for (std::size_t j = 0; j < times; ++j) {
    Histogram hist(0.0, 1.0, kJacobiBins);
    std::size_t total = 0, near05 = 0, near10 = 0;
    int all05 = 0, all10 = 0, band = 0;
    std::vector<double> worst_per_trial;
    for (const auto& trial : eigen) {
      double worst = 0.0;
      bool in_band = false;
      for (double x : trial[j]) {
        lowest = std::min(lowest, x);
        highest = std::max(highest, x);
        hist.add(std::clamp(x, 0.0, 1.0));
        const double d = distance_to_set(x, initial);
        worst = std::max(worst, d);
        near05 += d <= kIslandDeltas[0];
        near10 += d <= kIslandDeltas[1];
        in_band = in_band || (x >= kBandLo && x <= kBandHi);
        ++total;
      }
      all05 += worst <= kIslandDeltas[0];
      all10 += worst <= kIslandDeltas[1];
      band += in_band;
      worst_per_trial.push_back(worst);
    }
    const double n_trials = static_cast<double>(trials);
    const std::string key = "t=" + short_number(t_list[j]);
    r.set_scalar(key + "/island_fraction_0.05", static_cast<double>(near05) / static_cast<double>(total));
    r.set_scalar(key + "/island_fraction_0.1", static_cast<double>(near10) / static_cast<double>(total));
    r.set_scalar(key + "/trials_all_within_0.05", all05 / n_trials);
    r.set_scalar(key + "/trials_all_within_0.1", all10 / n_trials);
    r.set_scalar(key + "/trials_band_nonempty", band / n_trials);
    r.set_scalar(key + "/median_max_distance", stats::median(worst_per_trial));
    table.rows.push_back({t_list[j], r.scalar(key + "/island_fraction_0.05"), r.scalar(key + "/island_fraction_0.1"),
                          all05 / n_trials, all10 / n_trials, band / n_trials, stats::median(worst_per_trial)});
    r.histograms.emplace_back(key, hist);
  }
  r.tables.emplace_back("islands", std::move(table));
  r.set_scalar("min_eigenvalue", lowest);
  r.set_scalar("max_eigenvalue", highest);
  const double slack = std::min(lowest + kUnitIntervalSlack, 1.0 + kUnitIntervalSlack - highest);
  r.add_criterion("eigenvalues_in_unit_interval", slack >= 0.0, slack);
  return r;
}

ExperimentReport jacobi_longtime_experiment(double alpha, double beta, int N, double t_large, int trials, bool haar,
                                            const RunOptions& opts) {
  detail::require_dimension(N, "jacobi_longtime_experiment");
  detail::require_trials(trials, "jacobi_longtime_experiment");
  const auto law = freemeasure::free_jacobi_law(alpha, beta);
  const double rank_p = alpha * N, rank_q = beta * N;
  if (std::abs(rank_p - std::round(rank_p)) > 1e-9 || std::abs(rank_q - std::round(rank_q)) > 1e-9) {
    throw ContractError("jacobi_longtime_experiment: alpha N and beta N must be integers");
  }
  if (!haar && !(t_large >= 16.0)) throw DomainError("jacobi_longtime_experiment: t_large must be >= 16");

  const auto p_rank = static_cast<Eigen::Index>(std::round(rank_p));
  const auto q_rank = static_cast<Eigen::Index>(std::round(rank_q));
  Eigen::VectorXcd p_diag = Eigen::VectorXcd::Zero(N), q_diag = Eigen::VectorXcd::Zero(N);
  p_diag.head(p_rank).setOnes();
  q_diag.head(q_rank).setOnes();

  std::vector<std::vector<double>> eigen(static_cast<std::size_t>(trials));
  parallel_for(trials, opts.threads, [&](int i) {
    auto rng = detail::stream(opts, i);
    const CMatrix u = haar ? rmt::haar_unitary(N, rng) : rmt::ubm_at(N, t_large, opts.step, rng, opts.scheme);
    const CMatrix pu = p_diag.asDiagonal() * u;
    const CMatrix j = q_diag.asDiagonal() * (pu.adjoint() * pu) * q_diag.asDiagonal();
    eigen[static_cast<std::size_t>(i)] = rmt::hermitian_eigenvalues(j);
  });

  std::vector<double> pooled;
  double lowest = INFINITY, highest = -INFINITY;
  std::size_t at0 = 0, at1 = 0;
  for (const auto& trial : eigen) {
    for (double x : trial) {
      lowest = std::min(lowest, x);
      highest = std::max(highest, x);
      // Numerical zeros and ones are snapped onto the atoms before comparing laws.
      if (x < kAtomThreshold) {
        ++at0;
        x = 0.0;
      } else if (x > 1.0 - kAtomThreshold) {
        ++at1;
        x = 1.0;
      }
      pooled.push_back(x);
    }
  }
  const double total = static_cast<double>(pooled.size());
  const double ks = stats::ks_distance(
      pooled, [&](double x) { return law.cdf(x); }, [&](double x) { return law.cdf_left(x); });

  ExperimentReport r;
  r.name = "jacobi_longtime";
  r.params = {{"alpha", alpha}, {"beta", beta}, {"N", N}, {"t_large", t_large}, {"trials", trials}, {"haar", haar}};
  r.params.update(detail::run_params(opts));
  r.set_scalar("ks_distance", ks);
  r.set_scalar("atom0_estimate", static_cast<double>(at0) / total);
  r.set_scalar("atom1_estimate", static_cast<double>(at1) / total);
  r.set_scalar("atom0_law", law.atom0());
  r.set_scalar("atom1_law", law.atom1());
  r.set_scalar("r_minus", law.r_minus());
  r.set_scalar("r_plus", law.r_plus());
  r.set_scalar("min_eigenvalue", lowest);
  r.set_scalar("max_eigenvalue", highest);

  Histogram hist(0.0, 1.0, kJacobiBins);
  for (double x : pooled) hist.add(x);
  r.histograms.emplace_back("eigenvalues", hist);

  r.add_criterion("ks_distance_at_most_0.08", ks <= kLongtimeKsMax, kLongtimeKsMax - ks);
  const double d0 = std::abs(r.scalar("atom0_estimate") - law.atom0());
  const double d1 = std::abs(r.scalar("atom1_estimate") - law.atom1());
  r.add_criterion("atom0_within_0.05", d0 <= kAtomTolerance, kAtomTolerance - d0);
  r.add_criterion("atom1_within_0.05", d1 <= kAtomTolerance, kAtomTolerance - d1);
  const double slack = std::min(lowest + kUnitIntervalSlack, 1.0 + kUnitIntervalSlack - highest);
  r.add_criterion("eigenvalues_in_unit_interval", slack >= 0.0, slack);
  return r;
}

}  // namespace ubmlab::experiments
