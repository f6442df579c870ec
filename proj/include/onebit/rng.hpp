#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace onebit {

// Fixed substream offsets used inside one Monte Carlo trial. Each pipeline
// stage draws from its own generator so that, e.g., the data-phase noise never
// aliases the pilot-phase noise of the same trial.
enum class Substream : std::uint64_t {
  kChannel = 0,
  kPilotNoise = 1,
  kDataNoise = 2,
  kSymbol = 3,
  kAuxiliary = 4,
};

/// Counter-keyed random stream: a xoshiro256++ generator whose state is
/// derived from (seed, stream_id, substream) by SplitMix64 mixing.
///
/// Identical keys give identical sequences on every platform. Trials use
/// stream_id = trial index, so results do not depend on how trials are
/// scheduled across threads. Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id,
            Substream substream = Substream::kChannel);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
};

// SplitMix64 finalizer; exposed for key derivation tests.
std::uint64_t splitmix64(std::uint64_t& state);

} // namespace onebit
