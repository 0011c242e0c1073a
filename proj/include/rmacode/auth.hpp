#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rmacode/bitvec.hpp"
#include "rmacode/rm_code.hpp"
#include "rmacode/rng.hpp"

namespace rmacode {

// A configured instance of the scheme: the code plus the (M, l) sub-code.
struct AuthConfig {
  RmCode code;
  SubcodeParams params;

  static AuthConfig create(int m, int r, int source_len, int tag_len);

  std::size_t block_length() const noexcept { return code.block_length(); }
  int source_len() const noexcept { return params.source_len; }
  int tag_len() const noexcept { return params.tag_len; }
};

// Split key: k1 selects l codeword coordinates (stored sorted ascending),
// k2 is the l-bit one-time mask.
struct AuthKey {
  std::vector<std::uint32_t> coords;  // k1
  BitVector mask;                     // k2
};

// Uniform over K1 x K2: partial Fisher-Yates for the coordinate subset, then
// l mask bits. Deterministic given the seed / stream state.
AuthKey sample_key(const AuthConfig& config, std::uint64_t seed);
AuthKey sample_key(const AuthConfig& config, SplitMix64& rng);

// Entries of c at the given coordinates, in increasing coordinate order.
BitVector project(const BitVector& codeword,
                  std::span<const std::uint32_t> coords);

// t = project(encode_source(s), k1) XOR k2.
BitVector generate_tag(const AuthConfig& config, const BitVector& source,
                       const AuthKey& key);

struct Message {
  BitVector source;
  BitVector tag;
};

bool verify(const AuthConfig& config, const Message& msg, const AuthKey& key);

// Wire format: source bits then tag bits, packed MSB-first into bytes,
// zero-padded to a byte boundary. Total bit length M + l is implied by the
// config.
std::vector<std::uint8_t> encode_message(const Message& msg);
Message decode_message(const AuthConfig& config,
                       std::span<const std::uint8_t> bytes);
std::size_t message_byte_size(const AuthConfig& config);

// Key file text:
//   rmacode m=<m> r=<r> M=<M> l=<l>
//   k1=<hex> k2=<hex>
// with k1 as the length-n indicator bitstring and k2 as the l mask bits, both
// packed MSB-first into bytes and rendered as lowercase hex.
std::string key_to_text(const AuthConfig& config, const AuthKey& key);

struct ParsedKeyFile {
  int m = 0;
  int r = 0;
  int source_len = 0;
  int tag_len = 0;
  AuthKey key;
};

// Throws FormatError on malformed text, including an indicator whose weight
// disagrees with l.
ParsedKeyFile parse_key_text(std::string_view text);

}  // namespace rmacode
