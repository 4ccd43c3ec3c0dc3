#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "ubmlab/errors.hpp"
#include "ubmlab/rmt.hpp"

namespace ubmlab::rmt {

namespace {

void fill_gue(CMatrix& m, double diag_sd, double off_sd, RngStream& rng) {
  const Eigen::Index n = m.rows();
  // Column-major fill order keeps the stream layout independent of N's parity.
  for (Eigen::Index c = 0; c < n; ++c) {
    m(c, c) = cplx(rng.normal(diag_sd), 0.0);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const double re = rng.normal(off_sd);
      const double im = rng.normal(off_sd);
      m(r, c) = cplx(re, im);
      m(c, r) = cplx(re, -im);
    }
  }
}

void check_dimension(int N, const char* where) {
  if (N < 1) throw SizeError(std::string(where) + ": N must be >= 1");
}

}  // namespace

GueSample sample_gue(int N, RngStream& rng) {
  check_dimension(N, "sample_gue");
  GueSample s{N, CMatrix(N, N)};
  fill_gue(s.matrix, std::sqrt(1.0 / N), std::sqrt(0.5 / N), rng);
  return s;
}

CMatrix gue_bm_increment(int N, double dt, RngStream& rng) {
  check_dimension(N, "gue_bm_increment");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("gue_bm_increment: dt must be > 0");
  CMatrix m(N, N);
  fill_gue(m, std::sqrt(dt / N), std::sqrt(0.5 * dt / N), rng);
  return m;
}

CMatrix haar_unitary(int N, RngStream& rng) {
  check_dimension(N, "haar_unitary");
  CMatrix z(N, N);
  const double sd = std::sqrt(0.5);
  for (Eigen::Index c = 0; c < N; ++c) {
    for (Eigen::Index r = 0; r < N; ++r) {
      const double re = rng.normal(sd);
      z(r, c) = cplx(re, rng.normal(sd));
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < N; ++j) {
    const cplx d = packed(j, j);
    const double a = std::abs(d);
    if (a == 0.0) throw NumericError("haar_unitary: singular Gaussian draw");
    q.col(j) *= d / a;
  }
  return q;
}

std::vector<double> eigangles(const CMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) throw ContractError("eigangles: matrix must be square and nonempty");
  Eigen::ComplexEigenSolver<CMatrix> solver(u, false);
  if (solver.info() != Eigen::Success) throw NumericError("eigangles: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  std::vector<double> angles(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double a = std::arg(ev(i));
    if (a == -std::numbers::pi) a = std::numbers::pi;
    angles[static_cast<std::size_t>(i)] = a;
  }
  std::stable_sort(angles.begin(), angles.end());
  return angles;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw ContractError("hermitian_eigenvalues: matrix must be square and nonempty");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("hermitian_eigenvalues: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

cplx normalized_trace(const CMatrix& m) { return m.trace() / static_cast<double>(m.rows()); }

}  // namespace ubmlab::rmt
