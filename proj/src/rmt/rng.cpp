#include "ubmlab/rmt.hpp"

namespace ubmlab::rmt {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::seed_seq derive_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
  std::uint64_t state = master_seed;
  const std::uint64_t a = splitmix64(state);
  state ^= stream_id * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL;
  const std::uint64_t b = splitmix64(state);
  const std::uint64_t c = splitmix64(state);
  return std::seed_seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                       static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                       static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                       static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
  auto seq = derive_seed(master_seed, stream_id);
  engine_.seed(seq);
}

}  // namespace ubmlab::rmt
