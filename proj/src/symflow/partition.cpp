#include <algorithm>
#include <functional>
#include <sstream>

#include "ubmlab/errors.hpp"
#include "ubmlab/symflow.hpp"

namespace ubmlab::symflow {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p < 1) throw DomainError("Partition: parts must be >= 1");
    n_ += p;
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ',';
    os << parts_[i];
  }
  os << ']';
  return os.str();
}

namespace {

void enumerate(int remaining, int max_part, std::vector<int>& prefix,
               std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int k = std::min(remaining, max_part); k >= 1; --k) {
    prefix.push_back(k);
    enumerate(remaining - k, k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(int n) {
  if (n < 1 || n > kMaxPartitionN) {
    throw SizeError("partitions: n must lie in [1, " + std::to_string(kMaxPartitionN) + "]");
  }
  std::vector<Partition> out;
  std::vector<int> prefix;
  enumerate(n, n, prefix, out);
  return out;
}

std::size_t partition_index(const Partition& p) {
  const auto all = partitions(p.n());
  // reverse-lexicographic == descending under the defaulted comparison
  auto it = std::lower_bound(all.begin(), all.end(), p, std::greater<>());
  if (it == all.end() || *it != p) throw DomainError("partition_index: not a partition");
  return static_cast<std::size_t>(it - all.begin());
}

double ClassVector::total() const {
  double s = 0.0;
  for (const auto& [_, c] : coeffs) s += c;
  return s;
}

ClassVector& ClassVector::operator+=(const ClassVector& other) {
  if (other.n != n) throw DomainError("ClassVector: mismatched n");
  for (const auto& [p, c] : other.coeffs) coeffs[p] += c;
  return *this;
}

ClassVector& ClassVector::operator*=(double s) {
  for (auto& [_, c] : coeffs) c *= s;
  return *this;
}

}  // namespace ubmlab::symflow
