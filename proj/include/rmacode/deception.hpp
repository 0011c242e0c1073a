#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rmacode/bitvec.hpp"
#include "rmacode/rational.hpp"
#include "rmacode/rm_code.hpp"

namespace rmacode {

enum class Method {
  closed_form,
  bruteforce_simplified,
  bruteforce_definition,
};

std::string_view method_name(Method method);

// Enumeration limits. The three methods form a verification ladder: the
// definition-level oracle validates the simplified one, which validates the
// closed form, each on instances the cheaper method can afford.
struct Guardrails {
  std::uint64_t max_definition_keys = 1'000'000;       // C(n,l) * 2^l
  std::uint64_t max_definition_sources = 4096;         // 2^M
  std::uint64_t max_bruteforce_subsets = 100'000'000;  // total enumerated k1
  std::uint64_t max_matrix_cells = 100'000'000;        // materialized tags
};

struct DeceptionReport {
  int m = 0;
  int r = 0;
  int source_len = 0;
  int tag_len = 0;
  Rational p_impersonation;
  Rational p_substitution;
  int witness_weight = 0;      // maximizing codeword weight w
  int witness_tag_weight = 0;  // maximizing tag weight w_t
  Method method = Method::closed_form;
};

// Single-line record: m r M l P_I(exact) P_I(dec4) P_S(exact) P_S(dec4) w wt
// method.
std::string report_record(const DeceptionReport& report);

// Exactly 1 / 2^l.
Rational p_impersonation(int tag_len);

// Admissible tag weights for a weight-w codeword:
// [max(0, l-(n-w)), min(l, w)].
std::pair<int, int> tag_weight_range(int w, int n, int l);

// C(w, wt) * C(n-w, l-wt); zero for wt outside the admissible range.
BigInt count_tags_by_weight(int w, int n, int l, int wt);

// Tag values are the l projected bits packed MSB-first (tag bit 0 highest).
std::uint64_t tag_value(const BitVector& tag);
BitVector tag_from_value(std::uint64_t value, int tag_len);

// Counts of k1 subsets producing each tag for a fixed codeword; counts sum to
// C(n, l).
class TagDistribution {
 public:
  TagDistribution(int tag_len, std::vector<std::uint64_t> counts, BigInt total);

  int tag_len() const noexcept { return tag_len_; }
  const BigInt& total() const noexcept { return total_; }
  std::uint64_t count(std::uint64_t tag) const { return counts_[tag]; }
  std::uint64_t max_count() const noexcept { return max_count_; }
  // Smallest tag value attaining max_count().
  std::uint64_t argmax() const noexcept { return argmax_; }
  // Smallest tag weight among tags attaining max_count().
  int argmax_min_weight() const noexcept { return argmax_min_weight_; }
  std::size_t value_space() const noexcept { return counts_.size(); }

 private:
  int tag_len_;
  std::vector<std::uint64_t> counts_;
  BigInt total_;
  std::uint64_t max_count_ = 0;
  std::uint64_t argmax_ = 0;
  int argmax_min_weight_ = 0;
};

// Enumerates every size-l coordinate subset of the codeword (colex order) and
// tallies the projected tags. Guardrail: C(n,l) <= max_bruteforce_subsets.
TagDistribution tag_distribution(const BitVector& codeword, int tag_len,
                                 const Guardrails& guardrails = {});

// Closed form: maximize C(w,wt) C(n-w,l-wt) / C(n,l) over prefix-form
// sub-code weights w in [n/2^r, n/2]. Throws NoWitnessError when no such
// codeword exists.
DeceptionReport p_substitution_closed_form(const RmCode& code,
                                           const SubcodeParams& params);

// Simplified brute force: max over all 2^M - 1 nonzero sources of the largest
// tag-collision fraction.
DeceptionReport p_substitution_bruteforce(const RmCode& code,
                                          const SubcodeParams& params,
                                          const Guardrails& guardrails = {});

// Same maximization over the full code (no frozen bit); demonstrates why the
// frozen bit is required. The report echoes source_len = dimension.
DeceptionReport p_substitution_full_code(const RmCode& code, int tag_len,
                                         const Guardrails& guardrails = {});

// Literal evaluation of the defining equations over the complete key space:
// P_I as the best valid-key fraction of any forged message, P_S as the best
// conditional fraction given an observed message.
DeceptionReport p_deception_from_definitions(const RmCode& code,
                                             const SubcodeParams& params,
                                             const Guardrails& guardrails = {});

// Full |K| x |S| tag table. Rows: k1 subsets in colex order, k2 ascending
// within each k1. Columns: sources in colex ordinal order.
struct AuthMatrix {
  std::size_t block_length = 0;  // n, for row labels
  int tag_len = 0;
  std::size_t key_count = 0;
  std::size_t source_count = 0;
  std::vector<std::vector<std::uint32_t>> k1_subsets;  // per k1 group
  std::vector<std::uint32_t> tags;                     // row-major

  std::uint32_t at(std::size_t key_row, std::size_t source_col) const {
    return tags[key_row * source_count + source_col];
  }
};

AuthMatrix authentication_matrix(const RmCode& code,
                                 const SubcodeParams& params,
                                 const Guardrails& guardrails = {});

// CSV with a header row of source indices; k1 rendered as the length-n
// indicator bitstring, k2 and tags as bitstrings.
std::string authmatrix_csv(const AuthMatrix& matrix);

}  // namespace rmacode
