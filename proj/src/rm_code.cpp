#include "rmacode/rm_code.hpp"

#include <algorithm>
#include <utility>

#include "rmacode/errors.hpp"

namespace rmacode {

namespace {

constexpr int kMaxM = 20;

// j-subsets of {0..m-1} in colexicographic order, so {m-j..m-1} comes last.
std::vector<std::vector<int>> colex_subsets(int m, int j) {
  std::vector<std::vector<int>> out;
  if (j == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> idx(j);
  for (int i = 0; i < j; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    int i = 0;
    while (i < j) {
      const int limit = (i + 1 < j) ? idx[i + 1] : m;
      if (idx[i] + 1 < limit) break;
      ++i;
    }
    if (i == j) break;
    ++idx[i];
    for (int k = 0; k < i; ++k) idx[k] = k;
  }
  return out;
}

// Row for a monomial on the given variable subset: one at column c iff every
// listed bit of c is zero.
BitVector monomial_row(int m, const std::vector<int>& vars) {
  const std::size_t n = std::size_t{1} << m;
  std::uint64_t mask = 0;
  for (int v : vars) mask |= std::uint64_t{1} << v;
  BitVector row(n);
  for (std::size_t c = 0; c < n; ++c)
    if ((c & mask) == 0) row.set(c, true);
  return row;
}

// Reduced GF(2) basis with recorded pivot columns, built from the given rows.
struct Gf2Basis {
  std::vector<BitVector> rows;
  std::vector<std::size_t> pivots;
};

std::size_t leading_one(const BitVector& v) {
  const auto words = v.words();
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i]) return i * 64 + std::countr_zero(words[i]);
  return v.size();
}

Gf2Basis make_basis(std::vector<BitVector> rows) {
  Gf2Basis basis;
  for (auto& candidate : rows) {
    for (std::size_t i = 0; i < basis.rows.size(); ++i)
      if (candidate.get(basis.pivots[i])) candidate ^= basis.rows[i];
    const std::size_t pivot = leading_one(candidate);
    if (pivot == candidate.size()) continue;  // dependent
    basis.rows.push_back(candidate);
    basis.pivots.push_back(pivot);
  }
  return basis;
}

bool basis_contains(const Gf2Basis& basis, BitVector target) {
  for (std::size_t i = 0; i < basis.rows.size(); ++i)
    if (target.get(basis.pivots[i])) target ^= basis.rows[i];
  return target.is_zero();
}

std::vector<BitVector> active_rows(const RmCode& code,
                                   const SubcodeParams& params) {
  const std::size_t offset = source_row_offset(code, params);
  std::vector<BitVector> rows;
  rows.reserve(params.source_len);
  for (int i = 0; i < params.source_len; ++i) rows.push_back(code.row(offset + i));
  return rows;
}

}  // namespace

RmCode RmCode::build(int m, int r) {
  if (m < 1) throw ParameterError("RmCode: m must be at least 1");
  if (r < 0 || r > m) throw ParameterError("RmCode: r must lie in [0, m]");
  if (m > kMaxM)
    throw ParameterError("RmCode: m exceeds the capacity limit of 20");

  std::vector<BitVector> rows;
  std::vector<Block> blocks;
  for (int j = r; j >= 1; --j) {
    const auto subsets = colex_subsets(m, j);
    blocks.push_back({j, rows.size(), subsets.size()});
    for (const auto& vars : subsets) rows.push_back(monomial_row(m, vars));
  }
  blocks.push_back({0, rows.size(), 1});
  rows.push_back(BitVector::prefix(std::size_t{1} << m, std::size_t{1} << m));
  return RmCode(m, r, std::move(rows), std::move(blocks));
}

BitVector RmCode::encode(const BitVector& u) const {
  if (u.size() != dimension())
    throw DimensionError("encode: input length must equal the code dimension");
  BitVector c(block_length());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (u.get(i)) c ^= rows_[i];
  return c;
}

std::string RmCode::generator_text() const {
  std::string out;
  out.reserve(rows_.size() * (block_length() + 1));
  for (const auto& row : rows_) {
    out += row.to_string();
    out += '\n';
  }
  return out;
}

SubcodeParams SubcodeParams::create(const RmCode& code, int source_len,
                                    int tag_len) {
  const auto k_dim = static_cast<int>(code.dimension());
  const auto n = static_cast<long long>(code.block_length());
  if (code.r() == 0)
    throw ParameterError(
        "SubcodeParams: r = 0 leaves no source rows once the all-one row is "
        "frozen");
  if (source_len < 1 || source_len > k_dim - 1)
    throw ParameterError("SubcodeParams: M must lie in [1, dimension - 1]");
  if (source_len >= n)
    throw ParameterError("SubcodeParams: M must be smaller than the blocklength");
  if (tag_len < 1 || tag_len > source_len)
    throw ParameterError("SubcodeParams: l must lie in [1, M]");
  return SubcodeParams{source_len, tag_len};
}

std::size_t source_row_offset(const RmCode& code, const SubcodeParams& params) {
  return code.dimension() - static_cast<std::size_t>(params.source_len) - 1;
}

BitVector source_to_input(const RmCode& code, const SubcodeParams& params,
                          const BitVector& s) {
  if (s.size() != static_cast<std::size_t>(params.source_len))
    throw DimensionError("source_to_input: source length must equal M");
  BitVector u(code.dimension());
  const std::size_t offset = source_row_offset(code, params);
  for (std::size_t i = 0; i < s.size(); ++i) u.set(offset + i, s.get(i));
  return u;
}

BitVector encode_source(const RmCode& code, const SubcodeParams& params,
                        const BitVector& s) {
  return code.encode(source_to_input(code, params, s));
}

BitVector source_from_ordinal(std::uint64_t ordinal, int source_len) {
  BitVector s(static_cast<std::size_t>(source_len));
  for (int j = 0; j < source_len; ++j) s.set(j, (ordinal >> j) & 1u);
  return s;
}

std::size_t gf2_rank(std::vector<BitVector> rows) {
  return make_basis(std::move(rows)).rows.size();
}

std::vector<std::size_t> prefix_codeword_weights_in(const RmCode& code,
                                                    const SubcodeParams& params,
                                                    std::size_t w_lo,
                                                    std::size_t w_hi) {
  const std::size_t n = code.block_length();
  w_lo = std::max<std::size_t>(w_lo, 1);
  w_hi = std::min<std::size_t>(w_hi, n - 1);
  std::vector<std::size_t> out;
  if (w_lo > w_hi) return out;

  const Gf2Basis basis = make_basis(active_rows(code, params));
  const std::size_t words = (n + 63) / 64;
  const std::size_t work = (w_hi - w_lo + 1) * basis.rows.size() * words;
  if (work > (std::size_t{1} << 31))
    throw GuardrailError(
        "prefix_codeword_weights: row-reduction work exceeds the membership "
        "limit (2^31 word operations)");

  for (std::size_t w = w_lo; w <= w_hi; ++w)
    if (basis_contains(basis, BitVector::prefix(n, w))) out.push_back(w);
  return out;
}

std::vector<std::size_t> prefix_codeword_weights(const RmCode& code,
                                                 const SubcodeParams& params) {
  return prefix_codeword_weights_in(code, params, 1, code.block_length() - 1);
}

}  // namespace rmacode
