#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "mp_real.hpp"
#include "ubmlab/errors.hpp"
#include "ubmlab/symflow.hpp"

namespace ubmlab::symflow {

namespace {

using detail::MpMatrix;
using detail::MpReal;

constexpr double kScaledNorm = 0.5;
constexpr int kMaxTaylorTerms = 200;

const FlowMatrices& cached_flow(int n) {
  static const std::array<FlowMatrices, kMaxFlowN + 1> cache = [] {
    std::array<FlowMatrices, kMaxFlowN + 1> all;
    for (int k = 1; k <= kMaxFlowN; ++k) all[static_cast<std::size_t>(k)] = build_flow_matrices(k);
    return all;
  }();
  return cache[static_cast<std::size_t>(n)];
}

void check_args(const char* who, int n, int N, double t) {
  if (n < 1 || n > kMaxFlowN) {
    throw SizeError(std::string(who) + ": n must lie in [1, " + std::to_string(kMaxFlowN) + "]");
  }
  if (N < 1) throw DomainError(std::string(who) + ": N must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(who) + ": t must be finite and >= 0");
}

int squarings_for(double norm) {
  if (norm <= kScaledNorm) return 0;
  return static_cast<int>(std::ceil(std::log2(norm / kScaledNorm)));
}

// Bits needed so that rounding errors amplified by the unstable modes of
// exp(-t(split + merge/N^2)) stay far below double resolution of the result.
// Similarity by diag(N^{#cycles}) turns the generator into T/N, where T has the
// content sums (|.| <= n(n-1)/2) as eigenvalues. The result itself can be as
// small as the slowest decaying mode, hence twice the growth exponent.
mpfr_prec_t working_bits(int n, int N, double t) {
  double log_amp = t * n * (n - 1) / static_cast<double>(N);
  log_amp += (n - 1) * std::log(static_cast<double>(N));
  log_amp += 0.5 * std::lgamma(n + 1.0);
  return static_cast<mpfr_prec_t>(96 + std::ceil(log_amp / std::log(2.0)));
}

}  // namespace

Eigen::MatrixXd expm_neg(const Eigen::MatrixXd& m, double t) {
  const Eigen::Index dim = m.rows();
  const Eigen::MatrixXd x = -t * m;
  const int s = squarings_for(x.cwiseAbs().colwise().sum().maxCoeff());
  const Eigen::MatrixXd y = x / std::ldexp(1.0, s);

  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd term = result;
  for (int k = 1; k <= kMaxTaylorTerms; ++k) {
    term = (term * y) / static_cast<double>(k);
    result += term;
    const double tn = term.cwiseAbs().colwise().sum().maxCoeff();
    const double rn = result.cwiseAbs().colwise().sum().maxCoeff();
    if (tn <= 1e-18 * rn) break;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

Eigen::MatrixXd expm_neg_series(const Eigen::MatrixXd& m, double t) {
  const Eigen::Index dim = m.rows();
  const Eigen::MatrixXd x = -t * m;
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd term = result;
  for (int k = 1; k <= 2000; ++k) {
    term = (term * x) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() == 0.0) break;
    if (k > 4 && term.cwiseAbs().maxCoeff() <= 1e-20 * result.cwiseAbs().maxCoeff()) break;
  }
  return result;
}

double finite_n_moment_double(int n, int N, double t) {
  check_args("finite_n_moment_double", n, N, t);
  const auto& fm = cached_flow(n);
  const Eigen::MatrixXd gen = fm.split + fm.merge / (static_cast<double>(N) * N);
  return std::exp(-0.5 * n * t) * expm_neg(gen, t).col(0).sum();
}

double finite_n_moment(int n, int N, double t) {
  check_args("finite_n_moment", n, N, t);
  if (t == 0.0) return 1.0;
  if (n == 1) return std::exp(-0.5 * t);

  const auto& fm = cached_flow(n);
  const auto dim = fm.classes.size();
  const mpfr_prec_t bits = working_bits(n, N, t);

  // x = -t (split + merge / N^2), assembled in extended precision.
  MpMatrix x(dim, bits);
  MpReal n_sq(bits);
  mpfr_set_si(n_sq.get(), N, MPFR_RNDN);
  mpfr_sqr(n_sq.get(), n_sq.get(), MPFR_RNDN);
  MpReal tmp(bits);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const auto ri = static_cast<Eigen::Index>(r);
      const auto ci = static_cast<Eigen::Index>(c);
      mpfr_ptr e = x(r, c).get();
      mpfr_set_d(tmp.get(), fm.merge(ri, ci), MPFR_RNDN);
      mpfr_div(tmp.get(), tmp.get(), n_sq.get(), MPFR_RNDN);
      mpfr_set_d(e, fm.split(ri, ci), MPFR_RNDN);
      mpfr_add(e, e, tmp.get(), MPFR_RNDN);
      mpfr_mul_d(e, e, -t, MPFR_RNDN);
    }
  }

  const int s = squarings_for(x.norm1());
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) mpfr_div_2ui(x(r, c).get(), x(r, c).get(), static_cast<unsigned long>(s), MPFR_RNDN);
  }

  // Taylor series of exp(x / 2^s).
  const double stop = std::ldexp(1.0, -static_cast<int>(bits) - 8);
  MpMatrix result = MpMatrix::identity(dim, bits);
  MpMatrix term = MpMatrix::identity(dim, bits);
  MpMatrix scratch(dim, bits);
  for (int k = 1; k <= kMaxTaylorTerms * 4; ++k) {
    MpMatrix::multiply(term, x, scratch);
    std::swap(term, scratch);
    double term_norm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        mpfr_div_ui(term(r, c).get(), term(r, c).get(), static_cast<unsigned long>(k), MPFR_RNDN);
        mpfr_add(result(r, c).get(), result(r, c).get(), term(r, c).get(), MPFR_RNDN);
        term_norm = std::max(term_norm, std::abs(term(r, c).to_double()));
      }
    }
    if (term_norm <= stop) break;
    if (k == kMaxTaylorTerms * 4) throw ConvergenceError("finite_n_moment: Taylor series did not converge");
  }
  for (int i = 0; i < s; ++i) {
    MpMatrix::multiply(result, result, scratch);
    std::swap(result, scratch);
  }

  // Sum of class masses in the n-cycle column, times e^{-nt/2}.
  MpReal sum(bits);
  for (std::size_t r = 0; r < dim; ++r) mpfr_add(sum.get(), sum.get(), result(r, 0).get(), MPFR_RNDN);
  MpReal decay(bits);
  mpfr_set_d(decay.get(), -0.5 * n, MPFR_RNDN);
  mpfr_mul_d(decay.get(), decay.get(), t, MPFR_RNDN);
  mpfr_exp(decay.get(), decay.get(), MPFR_RNDN);
  mpfr_mul(sum.get(), sum.get(), decay.get(), MPFR_RNDN);
  return sum.to_double();
}

double free_moment(int n, double t) {
  check_args("free_moment", n, 1, t);
  if (t == 0.0) return 1.0;
  const auto& fm = cached_flow(n);
  return std::exp(-0.5 * n * t) * expm_neg(fm.split, t).col(0).sum();
}

BoundCheck check_moment_bound(int n, int N, double t) {
  BoundCheck b;
  b.lhs = std::abs(finite_n_moment(n, N, t) - free_moment(n, t));
  b.rhs = t * t * std::pow(static_cast<double>(n), 4) / (static_cast<double>(N) * N);
  b.pass = b.lhs <= b.rhs + kBoundSlack;
  return b;
}

BoundCheck check_cauchy_bound(int n, int N, double t) {
  BoundCheck b;
  b.lhs = std::abs(finite_n_moment(n, N, t) - finite_n_moment(n, 2 * N, t));
  b.rhs = 0.75 * t * t * std::pow(static_cast<double>(n), 4) / (static_cast<double>(N) * N);
  b.pass = b.lhs <= b.rhs + kBoundSlack;
  return b;
}

}  // namespace ubmlab::symflow
