#pragma once

// Exact moments E tr[(U_t^N)^n] of unitary Brownian motion and their N -> infinity
// limit, computed by flowing the n-cycle through the conjugacy-class space of S_n.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ubmlab::symflow {

inline constexpr int kMaxPartitionN = 16;
inline constexpr int kMaxFlowN = 12;
inline constexpr int kMaxOracleN = 7;

/// Integer partition of n; parts are nonincreasing and positive.
/// Indexes the conjugacy classes of S_n; size() is the cycle count.
class Partition {
 public:
  Partition() = default;
  /// Sorts the parts; throws DomainError if any part is < 1.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int n() const { return n_; }
  std::size_t size() const { return parts_.size(); }
  bool is_cycle() const { return parts_.size() == 1; }

  std::string str() const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// All partitions of n in reverse-lexicographic order ([n] first, [1,...,1] last).
std::vector<Partition> partitions(int n);

/// Position of p in partitions(p.n()).
std::size_t partition_index(const Partition& p);

/// Coefficients over the classes of S_n. Each coefficient is the total mass carried
/// by permutations of that class.
struct ClassVector {
  int n = 0;
  std::map<Partition, double> coeffs;

  double total() const;
  ClassVector& operator+=(const ClassVector& other);
  ClassVector& operator*=(double s);
};

/// Class-coordinate action of the cycle-splitting (split) and cycle-merging (merge)
/// transposition sums. Entry (mu, lambda) counts transpositions (i j) taking a fixed
/// representative of lambda into class mu.
struct FlowMatrices {
  int n = 0;
  std::vector<Partition> classes;
  Eigen::MatrixXd split;
  Eigen::MatrixXd merge;
};

/// Combinatorial construction. Requires 1 <= n <= kMaxFlowN.
FlowMatrices build_flow_matrices(int n);

/// Brute force over the n(n-1)/2 transpositions applied to the canonical
/// representative of lambda. Returns (split column, merge column).
std::pair<ClassVector, ClassVector> oracle_flow_column(int n, const Partition& lambda);

/// exp(-t M) by Taylor scaling-and-squaring.
Eigen::MatrixXd expm_neg(const Eigen::MatrixXd& m, double t);

/// exp(-t M) by plain term-wise series summation (test oracle; only accurate
/// when t * ||M|| is moderate).
Eigen::MatrixXd expm_neg_series(const Eigen::MatrixXd& m, double t);

/// nu_t^N(n) = E tr[(U_t^N)^n].
double finite_n_moment(int n, int N, double t);

/// The same quantity evaluated entirely in double precision. Accurate only when
/// t * n(n-1) / (2N) is small; kept as an independent route for tests.
double finite_n_moment_double(int n, int N, double t);

/// nu_t(n), the n-th moment of the free unitary Brownian motion.
double free_moment(int n, double t);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

inline constexpr double kBoundSlack = 1e-9;

/// |nu_t^N(n) - nu_t(n)| against t^2 n^4 / N^2.
BoundCheck check_moment_bound(int n, int N, double t);

/// |nu_t^N(n) - nu_t^{2N}(n)| against 3 t^2 n^4 / (4 N^2).
BoundCheck check_cauchy_bound(int n, int N, double t);

}  // namespace ubmlab::symflow
