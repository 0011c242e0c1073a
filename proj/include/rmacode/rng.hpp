#pragma once

#include <cstdint>

#include "rmacode/bitvec.hpp"

namespace rmacode {

// SplitMix64 stream (Steele/Lea/Flood finalizer). Seedable, splittable into
// independent substreams; one logical stream per run, substreams per trial.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return finalize(state_);
  }

  // Derived independent substream; does not advance this stream.
  SplitMix64 split(std::uint64_t stream) const {
    return SplitMix64(finalize(state_ + (stream + 1) * 0xBF58476D1CE4E5B9ull));
  }

  // Uniform in [0, bound), exact via rejection sampling.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  bool bit() { return next() >> 63; }

  BitVector bits(std::size_t length) {
    BitVector v(length);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < length; ++i) {
      if ((i & 63) == 0) word = next();
      v.set(i, (word >> (i & 63)) & 1u);
    }
    return v;
  }

 private:
  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace rmacode
