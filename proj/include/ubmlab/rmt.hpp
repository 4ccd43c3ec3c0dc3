#pragma once

// Seeded samplers for GUE and Haar unitaries and an integrator for Brownian
// motion on U(N).

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ubmlab::rmt {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultStep = 1e-2;
inline constexpr double kMaxStep = 0.1;
inline constexpr double kUnitarityTolerance = 1e-8;

/// Random stream keyed by (master_seed, stream_id). The engine state is derived
/// from both words by splitmix64, so trials can be run in any order.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  double normal() { return normal_(engine_); }
  double normal(double stddev) { return stddev * normal_(engine_); }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

struct GueSample {
  int N = 0;
  CMatrix matrix;
};

/// Hermitian with diagonal N(0, 1/N) and off-diagonal real and imaginary parts N(0, 1/2N).
GueSample sample_gue(int N, RngStream& rng);

/// sqrt(dt) times a GUE matrix: the increment of the Hermitian Brownian motion over dt.
CMatrix gue_bm_increment(int N, double dt, RngStream& rng);

enum class Scheme {
  Geodesic,    // U exp(i dX)
  EulerPolar,  // U (I + i dX - dt/2), then the unitary polar factor
};

std::string scheme_name(Scheme scheme);
/// Accepts "geodesic" and "euler-polar"; throws DomainError otherwise.
Scheme parse_scheme(std::string_view name);

/// max_ij |(U*U - I)_ij|
double unitarity_defect(const CMatrix& u);

/// One step of dU = i U dX - U dt / 2. Requires dt in (0, kMaxStep] and U unitary
/// to kUnitarityTolerance (ContractError otherwise).
CMatrix ubm_step(const CMatrix& u, double dt, RngStream& rng, Scheme scheme = Scheme::Geodesic);

/// Advances u by a given Hermitian increment dx spanning time dt, without checks.
CMatrix apply_increment(const CMatrix& u, const CMatrix& dx, double dt, Scheme scheme);

struct UnitaryPathSample {
  int N = 0;
  std::vector<double> times;
  std::vector<CMatrix> matrices;
  double step = kDefaultStep;
  Scheme scheme = Scheme::Geodesic;
};

/// Integrates from U_0 = I and records U at each requested time. Times must be
/// nonnegative and nondecreasing (ContractError otherwise); a shorter final step
/// lands on each time exactly.
UnitaryPathSample ubm_sample_path(int N, const std::vector<double>& times, double step, RngStream& rng,
                                  Scheme scheme = Scheme::Geodesic);

/// U_t alone.
CMatrix ubm_at(int N, double t, double step, RngStream& rng, Scheme scheme = Scheme::Geodesic);

/// Haar unitary: QR of a complex Ginibre matrix with the phases of diag(R) absorbed into Q.
CMatrix haar_unitary(int N, RngStream& rng);

/// Arguments of the eigenvalues in (-pi, pi], ascending; equal angles keep solver order.
std::vector<double> eigangles(const CMatrix& u);

/// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

/// Normalized trace tr = Tr / N.
cplx normalized_trace(const CMatrix& m);

}  // namespace ubmlab::rmt
