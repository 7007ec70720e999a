#ifndef RMT_RNG_HPP_
#define RMT_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace rmt {

// SplitMix64 avalanche step. Used both as a stand-alone mixer for seed
// derivation and to expand a 64-bit seed into the xoshiro state.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based replicate seed: a distinct (ensemble, n, replicate) triple
// yields a distinct stream regardless of execution order, so worker threads
// can pick up replicates in any order and still reproduce bit-identical
// output.
inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::uint64_t ensemble_index,
                                 std::uint64_t n,
                                 std::uint64_t replicate_index) {
  std::uint64_t s = master_seed;
  splitmix64_next(s);
  s ^= 0xa0761d6478bd642fULL * (ensemble_index + 1);
  splitmix64_next(s);
  s ^= 0xe7037ed1a0b428dbULL * (n + 1);
  splitmix64_next(s);
  s ^= 0x8ebc6af09c88c6e3ULL * (replicate_index + 1);
  return splitmix64_next(s);
}

// xoshiro256++ with a cached second Box-Muller deviate. Deterministic given
// the seed; never shared between threads (one state per replicate task).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : state_) w = splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
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

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the paired deviate is cached.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double theta = 6.283185307179586476925286766559 * uniform();
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace rmt

#endif  // RMT_RNG_HPP_
