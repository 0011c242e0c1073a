#include "doctest.h"

#include "rmacode/bitvec.hpp"
#include "rmacode/rng.hpp"

using namespace rmacode;

TEST_CASE("bit vector basics") {
  BitVector v(70);
  CHECK(v.size() == 70);
  CHECK(v.is_zero());
  v.set(0, true);
  v.set(69, true);
  CHECK(v.get(0));
  CHECK(v.get(69));
  CHECK_FALSE(v.get(1));
  CHECK(v.weight() == 2);
  v.set(0, false);
  CHECK(v.weight() == 1);
}

TEST_CASE("weight") {
  CHECK(BitVector::from_string("1100").weight() == 2);
  CHECK(BitVector::from_string("0000").weight() == 0);
  CHECK(BitVector::prefix(16, 8).weight() == 8);
}

TEST_CASE("prefix vector") {
  CHECK(BitVector::prefix(4, 2) == BitVector::from_string("1100"));
  CHECK(BitVector::prefix(16, 8).to_string() == "1111111100000000");
  CHECK(BitVector::prefix(4, 0).is_zero());
  CHECK(BitVector::prefix(130, 130).weight() == 130);
  CHECK_THROWS_AS(BitVector::prefix(4, 5), DimensionError);
}

TEST_CASE("xor and equality") {
  const auto a = BitVector::from_string("1010");
  const auto b = BitVector::from_string("1100");
  CHECK((a ^ b) == BitVector::from_string("0110"));
  CHECK((a ^ a).is_zero());
  CHECK_THROWS_AS(BitVector::from_string("10") ^ a, DimensionError);
  CHECK_THROWS_AS(BitVector::from_string("10x1"), FormatError);
}

TEST_CASE("msb-first packing") {
  // [0,1,1] -> 0b01100000
  const auto bits = BitVector::from_bits({0, 1, 1});
  const auto bytes = bits.packed_msb_first();
  REQUIRE(bytes.size() == 1);
  CHECK(bytes[0] == 0x60);
  CHECK(BitVector::unpack_msb_first(bytes, 3) == bits);

  SUBCASE("wrong byte count") {
    CHECK_THROWS_AS(BitVector::unpack_msb_first(std::vector<std::uint8_t>{0x60, 0x00}, 3),
                    DimensionError);
  }
  SUBCASE("nonzero padding") {
    CHECK_THROWS_AS(BitVector::unpack_msb_first(std::vector<std::uint8_t>{0x61}, 3),
                    FormatError);
  }
}

TEST_CASE("packing round-trips random vectors") {
  SplitMix64 rng(314159);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = 1 + rng.below(130);
    const BitVector v = rng.bits(len);
    CHECK(BitVector::unpack_msb_first(v.packed_msb_first(), len) == v);
    CHECK(BitVector::from_string(v.to_string()) == v);
  }
}
