#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmacode/errors.hpp"

namespace rmacode {

// Fixed-length binary vector packed into 64-bit words. Bit 0 is the leftmost
// entry. All arithmetic is word-wise XOR/AND; unused high bits of the last
// word stay zero so equality can compare words directly.
class BitVector {
 public:
  BitVector() = default;

  explicit BitVector(std::size_t length)
      : len_(length), words_((length + 63) / 64, 0) {}

  // [1_w, 0_{n-w}]
  static BitVector prefix(std::size_t length, std::size_t ones);

  static BitVector from_string(std::string_view zeros_and_ones);

  static BitVector from_bits(std::initializer_list<int> bits);

  std::size_t size() const noexcept { return len_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (std::uint64_t word : words_) w += std::popcount(word);
    return w;
  }

  bool is_zero() const noexcept {
    for (std::uint64_t word : words_)
      if (word) return false;
    return true;
  }

  BitVector& operator^=(const BitVector& other) {
    if (other.len_ != len_) throw DimensionError("BitVector XOR: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }

  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  std::string to_string() const;

  // Bits packed MSB-first into bytes, zero-padded on the right to a byte
  // boundary (the wire convention).
  std::vector<std::uint8_t> packed_msb_first() const;

  // Inverse of packed_msb_first; rejects byte strings of the wrong length or
  // with nonzero padding bits.
  static BitVector unpack_msb_first(std::span<const std::uint8_t> bytes,
                                    std::size_t nbits);

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rmacode
