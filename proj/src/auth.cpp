#include "rmacode/auth.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "rmacode/errors.hpp"

namespace rmacode {

namespace {

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xF];
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0)
    throw FormatError("hex string must have an even number of digits");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw FormatError("invalid hex digit");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 |
                                       nibble(hex[2 * i + 1]));
  return out;
}

int parse_int_field(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key)
    throw FormatError("key file: expected field " + std::string(key));
  token.remove_prefix(key.size());
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw FormatError("key file: malformed integer in field " +
                      std::string(key));
  return value;
}

}  // namespace

AuthConfig AuthConfig::create(int m, int r, int source_len, int tag_len) {
  RmCode code = RmCode::build(m, r);
  SubcodeParams params = SubcodeParams::create(code, source_len, tag_len);
  return AuthConfig{std::move(code), params};
}

AuthKey sample_key(const AuthConfig& config, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return sample_key(config, rng);
}

AuthKey sample_key(const AuthConfig& config, SplitMix64& rng) {
  const std::size_t n = config.block_length();
  const int l = config.tag_len();
  // partial Fisher-Yates: the first l entries are a uniform l-subset
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  for (int i = 0; i < l; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(idx[i], idx[j]);
  }
  AuthKey key;
  key.coords.assign(idx.begin(), idx.begin() + l);
  std::sort(key.coords.begin(), key.coords.end());
  key.mask = rng.bits(static_cast<std::size_t>(l));
  return key;
}

BitVector project(const BitVector& codeword,
                  std::span<const std::uint32_t> coords) {
  BitVector out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= codeword.size())
      throw DimensionError("project: coordinate index out of range");
    out.set(i, codeword.get(coords[i]));
  }
  return out;
}

BitVector generate_tag(const AuthConfig& config, const BitVector& source,
                       const AuthKey& key) {
  const BitVector codeword = encode_source(config.code, config.params, source);
  return project(codeword, key.coords) ^ key.mask;
}

bool verify(const AuthConfig& config, const Message& msg, const AuthKey& key) {
  if (msg.tag.size() != static_cast<std::size_t>(config.tag_len()))
    throw DimensionError("verify: tag length must equal l");
  return msg.tag == generate_tag(config, msg.source, key);
}

std::vector<std::uint8_t> encode_message(const Message& msg) {
  BitVector all(msg.source.size() + msg.tag.size());
  for (std::size_t i = 0; i < msg.source.size(); ++i)
    all.set(i, msg.source.get(i));
  for (std::size_t i = 0; i < msg.tag.size(); ++i)
    all.set(msg.source.size() + i, msg.tag.get(i));
  return all.packed_msb_first();
}

std::size_t message_byte_size(const AuthConfig& config) {
  return (static_cast<std::size_t>(config.source_len()) + config.tag_len() + 7) /
         8;
}

Message decode_message(const AuthConfig& config,
                       std::span<const std::uint8_t> bytes) {
  const std::size_t m_bits = config.source_len();
  const std::size_t t_bits = config.tag_len();
  const BitVector all = BitVector::unpack_msb_first(bytes, m_bits + t_bits);
  Message msg{BitVector(m_bits), BitVector(t_bits)};
  for (std::size_t i = 0; i < m_bits; ++i) msg.source.set(i, all.get(i));
  for (std::size_t i = 0; i < t_bits; ++i) msg.tag.set(i, all.get(m_bits + i));
  return msg;
}

std::string key_to_text(const AuthConfig& config, const AuthKey& key) {
  BitVector indicator(config.block_length());
  for (std::uint32_t c : key.coords) indicator.set(c, true);
  std::ostringstream out;
  out << "rmacode m=" << config.code.m() << " r=" << config.code.r()
      << " M=" << config.source_len() << " l=" << config.tag_len() << "\n";
  out << "k1=" << to_hex(indicator.packed_msb_first())
      << " k2=" << to_hex(key.mask.packed_msb_first()) << "\n";
  return out.str();
}

ParsedKeyFile parse_key_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic, tok_m, tok_r, tok_M, tok_l, tok_k1, tok_k2;
  if (!(in >> magic >> tok_m >> tok_r >> tok_M >> tok_l >> tok_k1 >> tok_k2))
    throw FormatError("key file: truncated");
  std::string extra;
  if (in >> extra) throw FormatError("key file: trailing tokens");
  if (magic != "rmacode") throw FormatError("key file: missing rmacode header");

  ParsedKeyFile parsed;
  parsed.m = parse_int_field(tok_m, "m=");
  parsed.r = parse_int_field(tok_r, "r=");
  parsed.source_len = parse_int_field(tok_M, "M=");
  parsed.tag_len = parse_int_field(tok_l, "l=");
  if (parsed.m < 1 || parsed.m > 20)
    throw FormatError("key file: m out of range");

  if (tok_k1.substr(0, 3) != "k1=" || tok_k2.substr(0, 3) != "k2=")
    throw FormatError("key file: expected k1= and k2= fields");
  const std::size_t n = std::size_t{1} << parsed.m;
  BitVector indicator, mask;
  try {
    indicator = BitVector::unpack_msb_first(from_hex(tok_k1.substr(3)), n);
    mask = BitVector::unpack_msb_first(
        from_hex(tok_k2.substr(3)), static_cast<std::size_t>(parsed.tag_len));
  } catch (const DimensionError& e) {
    throw FormatError(std::string("key file: ") + e.what());
  }
  if (indicator.weight() != static_cast<std::size_t>(parsed.tag_len))
    throw FormatError("key file: k1 indicator weight does not equal l");
  for (std::size_t i = 0; i < n; ++i)
    if (indicator.get(i)) parsed.key.coords.push_back(static_cast<std::uint32_t>(i));
  parsed.key.mask = std::move(mask);
  return parsed;
}

}  // namespace rmacode
