#include "onebit/rng.hpp"

namespace onebit {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, Substream substream)
    : seed_(seed), stream_id_(stream_id) {
  // Absorb the three key words one at a time so that (a, b) and (b, a) differ.
  std::uint64_t mix = seed;
  std::uint64_t key = splitmix64(mix);
  mix = key ^ stream_id;
  key = splitmix64(mix);
  mix = key ^ static_cast<std::uint64_t>(substream);
  key = splitmix64(mix);

  std::uint64_t sm = key;
  for (auto& word : state_) {
    word = splitmix64(sm);
  }
  // xoshiro must not start from the all-zero state.
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
    state_[0] = 1;
  }
}

} // namespace onebit
