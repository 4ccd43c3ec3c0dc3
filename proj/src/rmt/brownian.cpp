#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ubmlab/errors.hpp"
#include "ubmlab/rmt.hpp"

namespace ubmlab::rmt {

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Geodesic: return "geodesic";
    case Scheme::EulerPolar: return "euler-polar";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "geodesic") return Scheme::Geodesic;
  if (name == "euler-polar") return Scheme::EulerPolar;
  throw DomainError("unknown scheme '" + std::string(name) + "'");
}

namespace {
constexpr double kResyncThreshold = 1e-13;
}

double unitarity_defect(const CMatrix& u) {
  const CMatrix g = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return g.cwiseAbs().maxCoeff();
}

CMatrix apply_increment(const CMatrix& u, const CMatrix& dx, double dt, Scheme scheme) {
  if (scheme == Scheme::Geodesic) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(dx);
    if (eig.info() != Eigen::Success) throw NumericError("ubm_step: eigensolver failed");
    const auto& v = eig.eigenvectors();
    const Eigen::VectorXcd phases = (cplx(0.0, 1.0) * eig.eigenvalues().cast<cplx>()).array().exp();
    return (u * v) * (phases.asDiagonal() * v.adjoint());
  }
  CMatrix m = cplx(0.0, 1.0) * dx;
  m.diagonal().array() += 1.0 - 0.5 * dt;
  const CMatrix euler = u * m;
  Eigen::BDCSVD<CMatrix> svd(euler, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericError("ubm_step: SVD failed");
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix ubm_step(const CMatrix& u, double dt, RngStream& rng, Scheme scheme) {
  if (u.rows() != u.cols() || u.rows() == 0) throw ContractError("ubm_step: U must be square and nonempty");
  if (!(dt > 0.0 && dt <= kMaxStep)) throw DomainError("ubm_step: dt must lie in (0, 0.1]");
  const int N = static_cast<int>(u.rows());
  const CMatrix g = u.adjoint() * u - CMatrix::Identity(N, N);
  const double defect = g.cwiseAbs().maxCoeff();
  if (defect > kUnitarityTolerance) throw ContractError("ubm_step: U is not unitary");
  // Rounding from long chains of steps accumulates; one Newton-Schulz
  // iteration squares the defect away before it becomes visible.
  if (defect > kResyncThreshold) {
    const CMatrix fixed = u - 0.5 * (u * g);
    return apply_increment(fixed, gue_bm_increment(N, dt, rng), dt, scheme);
  }
  return apply_increment(u, gue_bm_increment(N, dt, rng), dt, scheme);
}

UnitaryPathSample ubm_sample_path(int N, const std::vector<double>& times, double step, RngStream& rng,
                                  Scheme scheme) {
  if (N < 1) throw SizeError("ubm_sample_path: N must be >= 1");
  if (!(step > 0.0 && step <= kMaxStep)) throw DomainError("ubm_sample_path: step must lie in (0, 0.1]");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw ContractError("ubm_sample_path: times must be finite and >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw ContractError("ubm_sample_path: times must be sorted");
  }

  UnitaryPathSample path{N, times, {}, step, scheme};
  path.matrices.reserve(times.size());
  CMatrix u = CMatrix::Identity(N, N);
  double now = 0.0;
  for (double target : times) {
    const double span = target - now;
    // Whole steps first, then one shorter step if a remainder is left.
    const auto whole = static_cast<long>(std::floor(span / step + 1e-9));
    for (long k = 0; k < whole; ++k) u = apply_increment(u, gue_bm_increment(N, step, rng), step, scheme);
    const double rest = span - static_cast<double>(whole) * step;
    if (rest > 1e-12 * std::max(1.0, target)) u = apply_increment(u, gue_bm_increment(N, rest, rng), rest, scheme);
    now = target;
    path.matrices.push_back(u);
  }
  return path;
}

CMatrix ubm_at(int N, double t, double step, RngStream& rng, Scheme scheme) {
  auto path = ubm_sample_path(N, {t}, step, rng, scheme);
  return std::move(path.matrices.front());
}

}  // namespace ubmlab::rmt
