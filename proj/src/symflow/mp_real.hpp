#pragma once

// Minimal RAII handle over an MPFR value with an explicit per-value precision.
// Boost's mpfr_float keeps its default precision in a process-wide static, which
// is not safe when concurrent callers want different precisions.

#include <mpfr.h>

#include <utility>
#include <vector>

namespace ubmlab::symflow::detail {

class MpReal {
 public:
  explicit MpReal(mpfr_prec_t bits, double value = 0.0) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  MpReal(const MpReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  MpReal(MpReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

// Row-major square matrix of MpReal.
class MpMatrix {
 public:
  MpMatrix(std::size_t dim, mpfr_prec_t bits) : dim_(dim), bits_(bits), data_(dim * dim, MpReal(bits)) {}

  std::size_t dim() const { return dim_; }
  mpfr_prec_t bits() const { return bits_; }
  MpReal& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const MpReal& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  static MpMatrix identity(std::size_t dim, mpfr_prec_t bits) {
    MpMatrix m(dim, bits);
    for (std::size_t i = 0; i < dim; ++i) mpfr_set_ui(m(i, i).get(), 1, MPFR_RNDN);
    return m;
  }

  // out = a * b
  static void multiply(const MpMatrix& a, const MpMatrix& b, MpMatrix& out) {
    const std::size_t n = a.dim_;
    MpReal prod(a.bits_);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) mpfr_set_zero(out(i, j).get(), 1);
      for (std::size_t k = 0; k < n; ++k) {
        if (mpfr_zero_p(a(i, k).get())) continue;
        for (std::size_t j = 0; j < n; ++j) {
          mpfr_mul(prod.get(), a(i, k).get(), b(k, j).get(), MPFR_RNDN);
          mpfr_add(out(i, j).get(), out(i, j).get(), prod.get(), MPFR_RNDN);
        }
      }
    }
  }

  // Max column absolute sum, rounded to double.
  double norm1() const {
    double best = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < dim_; ++r) s += std::abs((*this)(r, c).to_double());
      best = std::max(best, s);
    }
    return best;
  }

 private:
  std::size_t dim_;
  mpfr_prec_t bits_;
  std::vector<MpReal> data_;
};

}  // namespace ubmlab::symflow::detail
