#pragma once

#include <cstdint>
#include <limits>

#include "lambdach/spin_algebra.hpp"

namespace lambdach {

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
  z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
  return z ^ (z >> 31);
}

/// Counter-based random stream keyed by (seed, stream id).
///
/// Draw i of a stream is mix64(key + (i + 1) * gamma), so any chunk of a
/// parallel computation can open its own stream without coordination and the
/// sequence seen by chunk c never depends on how chunks are scheduled. All
/// variate transforms are written out here rather than taken from <random>
/// so results are bit-identical across standard library implementations.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed ^ mix64(stream + UINT64_C(0x632BE59BD9B4E019)))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ + (++counter_) * kGamma); }

  /// Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  /// Unit-mean exponential.
  double exponential();

  /// Uniform direction on the unit sphere.
  UnitVector3 direction();

  [[nodiscard]] std::uint64_t draws() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = UINT64_C(0x9E3779B97F4A7C15);

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace lambdach
