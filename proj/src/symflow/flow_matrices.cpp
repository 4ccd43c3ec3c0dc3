#include <map>

#include "ubmlab/errors.hpp"
#include "ubmlab/symflow.hpp"

namespace ubmlab::symflow {

namespace {

std::vector<int> without(const std::vector<int>& parts, std::size_t a, std::size_t b) {
  std::vector<int> rest;
  rest.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != a && i != b) rest.push_back(parts[i]);
  }
  return rest;
}

// Cycle type of a permutation given as an image table.
Partition cycle_type(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<int> lengths;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (auto x = s; !seen[x]; x = static_cast<std::size_t>(perm[x])) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition(std::move(lengths));
}

}  // namespace

FlowMatrices build_flow_matrices(int n) {
  if (n < 1 || n > kMaxFlowN) {
    throw SizeError("build_flow_matrices: n must lie in [1, " + std::to_string(kMaxFlowN) + "]");
  }
  FlowMatrices fm;
  fm.n = n;
  fm.classes = partitions(n);
  const auto dim = static_cast<Eigen::Index>(fm.classes.size());
  fm.split = Eigen::MatrixXd::Zero(dim, dim);
  fm.merge = Eigen::MatrixXd::Zero(dim, dim);
  std::map<Partition, Eigen::Index> index;
  for (Eigen::Index i = 0; i < dim; ++i) index.emplace(fm.classes[static_cast<std::size_t>(i)], i);

  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto& parts = fm.classes[static_cast<std::size_t>(col)].parts();
    const std::size_t none = parts.size();
    for (std::size_t a = 0; a < parts.size(); ++a) {
      const int len = parts[a];
      // Both points inside one cycle: a transposition at cyclic distance d
      // splits it into lengths d and len - d. There are len such pairs for
      // each d < len/2 and len/2 pairs when d == len/2.
      for (int d = 1; 2 * d <= len; ++d) {
        const int count = (2 * d == len) ? len / 2 : len;
        auto rest = without(parts, a, none);
        rest.push_back(d);
        rest.push_back(len - d);
        const auto row = index.at(Partition(rest));
        fm.split(row, col) += count;
      }
      // One point in each of two cycles: the product has one merged cycle.
      for (std::size_t b = a + 1; b < parts.size(); ++b) {
        auto rest = without(parts, a, b);
        rest.push_back(len + parts[b]);
        const auto row = index.at(Partition(rest));
        fm.merge(row, col) += static_cast<double>(len) * parts[b];
      }
    }
  }
  return fm;
}

std::pair<ClassVector, ClassVector> oracle_flow_column(int n, const Partition& lambda) {
  if (n < 1 || n > kMaxOracleN) {
    throw SizeError("oracle_flow_column: n must lie in [1, " + std::to_string(kMaxOracleN) + "]");
  }
  if (lambda.n() != n) throw DomainError("oracle_flow_column: lambda is not a partition of n");

  // Canonical representative: cycles on consecutive points in part order.
  std::vector<int> sigma(static_cast<std::size_t>(n));
  int start = 0;
  for (int len : lambda.parts()) {
    for (int k = 0; k < len; ++k) {
      sigma[static_cast<std::size_t>(start + k)] = start + (k + 1) % len;
    }
    start += len;
  }
  const std::size_t cycles = lambda.size();

  ClassVector split{n, {}};
  ClassVector merge{n, {}};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // (sigma . (i j))(x) = sigma((i j)(x))
      auto prod = sigma;
      std::swap(prod[static_cast<std::size_t>(i)], prod[static_cast<std::size_t>(j)]);
      const Partition mu = cycle_type(prod);
      if (mu.size() > cycles) {
        split.coeffs[mu] += 1.0;
      } else if (mu.size() < cycles) {
        merge.coeffs[mu] += 1.0;
      } else {
        throw NumericError("oracle_flow_column: transposition preserved the cycle count");
      }
    }
  }
  return {split, merge};
}

}  // namespace ubmlab::symflow
