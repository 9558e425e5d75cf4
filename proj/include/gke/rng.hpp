#pragma once

#include <cstdint>
#include <cmath>

namespace gke {

// splitmix64: the state advances by a fixed odd constant and the output is a
// bijective mix of the state, so draw k is a pure function of (seed, k).
// Streams are derived by hashing the (seed, stream) pair, which gives each
// replication of a study its own independent generator with no coordination.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(mix(seed + kGolden * (stream + 1)));
  }

  std::uint64_t next() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform on [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1); safe under log().
  double next_open_unit() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_open_unit()));
    const double theta = 2.0 * kPi * next_unit();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr double kPi = 3.14159265358979323846;
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gke
