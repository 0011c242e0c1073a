#include "rmacode/bitvec.hpp"

namespace rmacode {

BitVector BitVector::prefix(std::size_t length, std::size_t ones) {
  if (ones > length) throw DimensionError("prefix: ones exceeds length");
  BitVector v(length);
  const std::size_t full = ones / 64;
  for (std::size_t i = 0; i < full; ++i) v.words_[i] = ~std::uint64_t{0};
  if (ones % 64) v.words_[full] = (std::uint64_t{1} << (ones % 64)) - 1;
  return v;
}

BitVector BitVector::from_string(std::string_view text) {
  BitVector v(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      v.set(i, true);
    } else if (text[i] != '0') {
      throw FormatError("bit string must contain only '0' and '1'");
    }
  }
  return v;
}

BitVector BitVector::from_bits(std::initializer_list<int> bits) {
  BitVector v(bits.size());
  std::size_t i = 0;
  for (int b : bits) v.set(i++, b != 0);
  return v;
}

std::string BitVector::to_string() const {
  std::string out(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) out[i] = '1';
  return out;
}

std::vector<std::uint8_t> BitVector::packed_msb_first() const {
  std::vector<std::uint8_t> bytes((len_ + 7) / 8, 0);
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) bytes[i / 8] |= std::uint8_t(0x80u >> (i % 8));
  return bytes;
}

BitVector BitVector::unpack_msb_first(std::span<const std::uint8_t> bytes,
                                      std::size_t nbits) {
  if (bytes.size() != (nbits + 7) / 8)
    throw DimensionError("unpack: byte string has the wrong length");
  BitVector v(nbits);
  for (std::size_t i = 0; i < nbits; ++i)
    v.set(i, (bytes[i / 8] >> (7 - i % 8)) & 1u);
  // padding bits must be zero
  for (std::size_t i = nbits; i < bytes.size() * 8; ++i)
    if ((bytes[i / 8] >> (7 - i % 8)) & 1u)
      throw FormatError("unpack: nonzero padding bits");
  return v;
}

}  // namespace rmacode
