#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rmacode/bitvec.hpp"

namespace rmacode {

// Generator matrix of RM(m, r) over GF(2), blocks G_r, ..., G_1, G_0 top to
// bottom. Column c (0-based) corresponds to the m-bit word c; the G_1 row for
// variable i has a one at column c iff bit i of c is zero, and rows of each
// G_j follow the colexicographic order of their variable subsets so that the
// last row of G_j is [1_{2^{m-j}}, 0_{n - 2^{m-j}}].
class RmCode {
 public:
  struct Block {
    int degree;         // j
    std::size_t first;  // row index of the block's first row
    std::size_t count;  // C(m, j)
  };

  // Throws ParameterError for r < 0, r > m, or m < 1; m > 20 is rejected as a
  // capacity limit.
  static RmCode build(int m, int r);

  int m() const noexcept { return m_; }
  int r() const noexcept { return r_; }
  std::size_t block_length() const noexcept { return std::size_t{1} << m_; }
  std::size_t dimension() const noexcept { return rows_.size(); }

  const BitVector& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  // uG over GF(2); u must have length dimension().
  BitVector encode(const BitVector& u) const;

  // One row per line, '0'/'1' characters, no separators.
  std::string generator_text() const;

 private:
  RmCode(int m, int r, std::vector<BitVector> rows, std::vector<Block> blocks)
      : m_(m), r_(r), rows_(std::move(rows)), blocks_(std::move(blocks)) {}

  int m_ = 0;
  int r_ = 0;
  std::vector<BitVector> rows_;
  std::vector<Block> blocks_;
};

// Sub-code configuration: the source occupies the M generator rows directly
// above the all-one row, which is frozen to zero together with any leading
// rows.
struct SubcodeParams {
  int source_len;  // M
  int tag_len;     // l

  // Validates 1 <= l <= M <= dimension-1 and M < n. Throws ParameterError,
  // with a dedicated message for r = 0 (the repetition code admits no M).
  static SubcodeParams create(const RmCode& code, int source_len, int tag_len);
};

// Row index of the first source-bearing generator row (dimension - M - 1).
std::size_t source_row_offset(const RmCode& code, const SubcodeParams& params);

// u = [0..., s, 0]; s must have length M.
BitVector source_to_input(const RmCode& code, const SubcodeParams& params,
                          const BitVector& s);

BitVector encode_source(const RmCode& code, const SubcodeParams& params,
                        const BitVector& s);

// Colex enumeration of the source space: bit j of `ordinal` becomes s[j].
BitVector source_from_ordinal(std::uint64_t ordinal, int source_len);

// Rank of a set of equal-length GF(2) row vectors.
std::size_t gf2_rank(std::vector<BitVector> rows);

// All w in [w_lo, w_hi] such that [1_w, 0_{n-w}] lies in the sub-code, decided
// exactly by row reduction of the M active generator rows. Sorted ascending.
std::vector<std::size_t> prefix_codeword_weights_in(const RmCode& code,
                                                    const SubcodeParams& params,
                                                    std::size_t w_lo,
                                                    std::size_t w_hi);

// Full-range query over w in [1, n-1]. Declares its own work limit and throws
// GuardrailError above it.
std::vector<std::size_t> prefix_codeword_weights(const RmCode& code,
                                                 const SubcodeParams& params);

}  // namespace rmacode
