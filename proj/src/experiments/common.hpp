#pragma once

#include <string>

#include "ubmlab/errors.hpp"
#include "ubmlab/experiments.hpp"

namespace ubmlab::experiments::detail {

inline void require_trials(int trials, const char* where) {
  if (trials < 1) throw DomainError(std::string(where) + ": trials must be >= 1");
}

inline void require_dimension(int N, const char* where) {
  if (N < 1) throw SizeError(std::string(where) + ": N must be >= 1");
}

inline void require_time(double t, const char* where) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(where) + ": t must be finite and >= 0");
}

inline Json run_params(const RunOptions& opts) {
  return {{"seed", opts.seed}, {"step", opts.step}, {"scheme", rmt::scheme_name(opts.scheme)}};
}

inline rmt::RngStream stream(const RunOptions& opts, int trial, int streams_per_trial = 1, int k = 0) {
  return rmt::RngStream(opts.seed, static_cast<std::uint64_t>(trial) * static_cast<std::uint64_t>(streams_per_trial) +
                                       static_cast<std::uint64_t>(k));
}

}  // namespace ubmlab::experiments::detail
