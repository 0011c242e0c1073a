#include "rmacode/deception.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <utility>

#include "rmacode/errors.hpp"

namespace rmacode {

namespace {

// Ascending-index l-subsets of [0, n), advanced in colexicographic order.
class ColexSubsets {
 public:
  ColexSubsets(std::uint32_t n, std::uint32_t k) : n_(n), idx_(k) {
    for (std::uint32_t i = 0; i < k; ++i) idx_[i] = i;
  }

  std::span<const std::uint32_t> indices() const noexcept { return idx_; }

  bool next() {
    std::size_t i = 0;
    while (i < idx_.size()) {
      const std::uint32_t limit = (i + 1 < idx_.size()) ? idx_[i + 1] : n_;
      if (idx_[i] + 1 < limit) break;
      ++i;
    }
    if (i == idx_.size()) return false;
    ++idx_[i];
    for (std::size_t j = 0; j < i; ++j) idx_[j] = static_cast<std::uint32_t>(j);
    return true;
  }

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> idx_;
};

std::uint64_t projected_value(const BitVector& codeword,
                              std::span<const std::uint32_t> coords) {
  std::uint64_t v = 0;
  for (std::uint32_t c : coords) v = (v << 1) | codeword.get(c);
  return v;
}

BigInt pow2(int e) { return BigInt(1) << e; }

struct WitnessState {
  std::uint64_t count = 0;
  int weight = 0;
  int tag_weight = 0;
  bool any = false;

  // Larger count wins; ties prefer smaller (weight, tag_weight).
  void offer(std::uint64_t count_in, int weight_in, int tag_weight_in) {
    if (!any || count_in > count ||
        (count_in == count &&
         std::pair{weight_in, tag_weight_in} < std::pair{weight, tag_weight})) {
      count = count_in;
      weight = weight_in;
      tag_weight = tag_weight_in;
      any = true;
    }
  }
};

DeceptionReport make_report(const RmCode& code, int source_len, int tag_len,
                            Rational p_s, int w, int wt, Method method) {
  DeceptionReport report;
  report.m = code.m();
  report.r = code.r();
  report.source_len = source_len;
  report.tag_len = tag_len;
  report.p_impersonation = p_impersonation(tag_len);
  report.p_substitution = std::move(p_s);
  report.witness_weight = w;
  report.witness_tag_weight = wt;
  report.method = method;
  return report;
}

// Shared maximization over a set of codewords indexed by ordinal.
template <typename CodewordFn>
DeceptionReport bruteforce_over_codewords(const RmCode& code, int source_len,
                                          int tag_len, std::uint64_t ordinals,
                                          CodewordFn&& codeword_at,
                                          const Guardrails& guardrails) {
  const auto n = static_cast<std::int64_t>(code.block_length());
  const BigInt per_codeword = binomial(n, tag_len);
  if (per_codeword * ordinals > guardrails.max_bruteforce_subsets)
    throw GuardrailError(
        "brute force: (2^M - 1) * C(n,l) exceeds max_bruteforce_subsets "
        "(RMACODE_GUARDRAIL_SUBSETS)");

  WitnessState best;
  for (std::uint64_t ordinal = 1; ordinal <= ordinals; ++ordinal) {
    const BitVector c = codeword_at(ordinal);
    const TagDistribution dist = tag_distribution(c, tag_len, guardrails);
    best.offer(dist.max_count(), static_cast<int>(c.weight()),
               dist.argmax_min_weight());
  }
  return make_report(code, source_len, tag_len,
                     Rational(BigInt(best.count), per_codeword), best.weight,
                     best.tag_weight, Method::bruteforce_simplified);
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::closed_form:
      return "closed_form";
    case Method::bruteforce_simplified:
      return "bruteforce_simplified";
    case Method::bruteforce_definition:
      return "bruteforce_definition";
  }
  return "unknown";
}

std::string report_record(const DeceptionReport& report) {
  std::ostringstream out;
  out << report.m << ' ' << report.r << ' ' << report.source_len << ' '
      << report.tag_len << ' ' << report.p_impersonation.to_fraction_string()
      << ' ' << report.p_impersonation.to_decimal(4) << ' '
      << report.p_substitution.to_fraction_string() << ' '
      << report.p_substitution.to_decimal(4) << ' ' << report.witness_weight
      << ' ' << report.witness_tag_weight << ' ' << method_name(report.method);
  return out.str();
}

Rational p_impersonation(int tag_len) {
  if (tag_len < 1) throw ParameterError("p_impersonation: l must be positive");
  return Rational(1, pow2(tag_len));
}

std::pair<int, int> tag_weight_range(int w, int n, int l) {
  return {std::max(0, l - (n - w)), std::min(l, w)};
}

BigInt count_tags_by_weight(int w, int n, int l, int wt) {
  return binomial(w, wt) * binomial(n - w, l - wt);
}

std::uint64_t tag_value(const BitVector& tag) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < tag.size(); ++i) v = (v << 1) | tag.get(i);
  return v;
}

BitVector tag_from_value(std::uint64_t value, int tag_len) {
  BitVector tag(static_cast<std::size_t>(tag_len));
  for (int i = 0; i < tag_len; ++i)
    tag.set(i, (value >> (tag_len - 1 - i)) & 1u);
  return tag;
}

TagDistribution::TagDistribution(int tag_len, std::vector<std::uint64_t> counts,
                                 BigInt total)
    : tag_len_(tag_len), counts_(std::move(counts)), total_(std::move(total)) {
  for (std::size_t v = 0; v < counts_.size(); ++v) {
    if (counts_[v] > max_count_) {
      max_count_ = counts_[v];
      argmax_ = v;
      argmax_min_weight_ = std::popcount(v);
    } else if (counts_[v] == max_count_ && max_count_ > 0) {
      argmax_min_weight_ =
          std::min(argmax_min_weight_, std::popcount(v));
    }
  }
}

TagDistribution tag_distribution(const BitVector& codeword, int tag_len,
                                 const Guardrails& guardrails) {
  const auto n = static_cast<std::int64_t>(codeword.size());
  if (tag_len < 1 || tag_len > n)
    throw ParameterError("tag_distribution: l must lie in [1, n]");
  if (tag_len > 22)
    throw GuardrailError("tag_distribution: tag space above 2^22 values");
  const BigInt total = binomial(n, tag_len);
  if (total > guardrails.max_bruteforce_subsets)
    throw GuardrailError(
        "tag_distribution: C(n,l) exceeds max_bruteforce_subsets "
        "(RMACODE_GUARDRAIL_SUBSETS)");

  std::vector<std::uint64_t> counts(std::size_t{1} << tag_len, 0);
  ColexSubsets subsets(static_cast<std::uint32_t>(n),
                       static_cast<std::uint32_t>(tag_len));
  do {
    ++counts[projected_value(codeword, subsets.indices())];
  } while (subsets.next());
  return TagDistribution(tag_len, std::move(counts), total);
}

DeceptionReport p_substitution_closed_form(const RmCode& code,
                                           const SubcodeParams& params) {
  const std::size_t n = code.block_length();
  const int l = params.tag_len;
  const auto weights =
      prefix_codeword_weights_in(code, params, n >> code.r(), n >> 1);
  if (weights.empty())
    throw NoWitnessError(
        "closed form: no prefix-form sub-code codeword with weight in "
        "[n/2^r, n/2]; fall back to the brute-force method");

  BigInt best_count = -1;
  int best_w = 0;
  int best_wt = 0;
  for (std::size_t w : weights) {
    const auto [wt_lo, wt_hi] =
        tag_weight_range(static_cast<int>(w), static_cast<int>(n), l);
    for (int wt = wt_lo; wt <= wt_hi; ++wt) {
      const BigInt count =
          count_tags_by_weight(static_cast<int>(w), static_cast<int>(n), l, wt);
      if (count > best_count) {
        best_count = count;
        best_w = static_cast<int>(w);
        best_wt = wt;
      }
    }
  }
  return make_report(code, params.source_len, l,
                     Rational(best_count, binomial(static_cast<std::int64_t>(n), l)),
                     best_w, best_wt, Method::closed_form);
}

DeceptionReport p_substitution_bruteforce(const RmCode& code,
                                          const SubcodeParams& params,
                                          const Guardrails& guardrails) {
  const int source_len = params.source_len;
  if (source_len >= 63)
    throw GuardrailError("brute force: source space 2^M does not fit a word");
  const std::uint64_t ordinals = (std::uint64_t{1} << source_len) - 1;
  return bruteforce_over_codewords(
      code, source_len, params.tag_len, ordinals,
      [&](std::uint64_t ordinal) {
        return encode_source(code, params,
                             source_from_ordinal(ordinal, source_len));
      },
      guardrails);
}

DeceptionReport p_substitution_full_code(const RmCode& code, int tag_len,
                                         const Guardrails& guardrails) {
  const auto k_dim = static_cast<int>(code.dimension());
  if (tag_len < 1 || tag_len > static_cast<int>(code.block_length()))
    throw ParameterError("full-code brute force: l must lie in [1, n]");
  if (k_dim >= 63)
    throw GuardrailError("full-code brute force: 2^k does not fit a word");
  const std::uint64_t ordinals = (std::uint64_t{1} << k_dim) - 1;
  return bruteforce_over_codewords(
      code, k_dim, tag_len, ordinals,
      [&](std::uint64_t ordinal) {
        return code.encode(source_from_ordinal(ordinal, k_dim));
      },
      guardrails);
}

DeceptionReport p_deception_from_definitions(const RmCode& code,
                                             const SubcodeParams& params,
                                             const Guardrails& guardrails) {
  const auto n = static_cast<std::int64_t>(code.block_length());
  const int source_len = params.source_len;
  const int l = params.tag_len;

  const BigInt k1_count_big = binomial(n, l);
  const BigInt key_count_big = k1_count_big * pow2(l);
  if (key_count_big > guardrails.max_definition_keys)
    throw GuardrailError(
        "definition oracle: C(n,l) * 2^l exceeds max_definition_keys "
        "(RMACODE_GUARDRAIL_KEYS)");
  if (pow2(source_len) > guardrails.max_definition_sources)
    throw GuardrailError(
        "definition oracle: 2^M exceeds max_definition_sources (4096)");
  if (2 * l > 24)
    throw GuardrailError("definition oracle: joint tag table above 2^24");

  const std::size_t source_count = std::size_t{1} << source_len;
  const std::size_t tag_space = std::size_t{1} << l;
  const auto k1_count = static_cast<std::uint64_t>(k1_count_big);

  std::vector<BitVector> codewords;
  codewords.reserve(source_count);
  for (std::size_t ordinal = 0; ordinal < source_count; ++ordinal)
    codewords.push_back(
        encode_source(code, params, source_from_ordinal(ordinal, source_len)));

  // k1 subsets, flattened in colex order
  std::vector<std::uint32_t> k1_flat;
  k1_flat.reserve(k1_count * l);
  {
    ColexSubsets subsets(static_cast<std::uint32_t>(n),
                         static_cast<std::uint32_t>(l));
    do {
      const auto idx = subsets.indices();
      k1_flat.insert(k1_flat.end(), idx.begin(), idx.end());
    } while (subsets.next());
  }
  auto proj = [&](const BitVector& c, std::uint64_t k1_idx) {
    return projected_value(
        c, std::span(k1_flat).subspan(k1_idx * l, static_cast<std::size_t>(l)));
  };

  // P_I: best valid-key fraction over forged messages (s', t').
  std::uint64_t best_insert = 0;
  std::vector<std::uint64_t> cnt(tag_space);
  for (const BitVector& c : codewords) {
    std::fill(cnt.begin(), cnt.end(), 0);
    for (std::uint64_t k = 0; k < k1_count; ++k) {
      const std::uint64_t t0 = proj(c, k);
      for (std::uint64_t k2 = 0; k2 < tag_space; ++k2) ++cnt[t0 ^ k2];
    }
    best_insert = std::max(best_insert, *std::max_element(cnt.begin(), cnt.end()));
  }
  const Rational p_i(BigInt(best_insert), key_count_big);

  // P_S: best conditional fraction over observed (s, t) and forged (s', t').
  std::uint64_t best_num = 0;
  std::uint64_t best_den = 1;
  int best_w = 0;
  int best_wt = 0;
  bool any = false;
  std::vector<std::uint64_t> denom(tag_space);
  std::vector<std::uint64_t> joint(tag_space * tag_space);
  for (std::size_t si = 0; si < source_count; ++si) {
    const BitVector& cs = codewords[si];
    std::fill(denom.begin(), denom.end(), 0);
    for (std::uint64_t k = 0; k < k1_count; ++k) {
      const std::uint64_t t0 = proj(cs, k);
      for (std::uint64_t k2 = 0; k2 < tag_space; ++k2) ++denom[t0 ^ k2];
    }
    for (std::size_t sj = 0; sj < source_count; ++sj) {
      if (sj == si) continue;
      const BitVector& cp = codewords[sj];
      std::fill(joint.begin(), joint.end(), 0);
      for (std::uint64_t k = 0; k < k1_count; ++k) {
        const std::uint64_t t0 = proj(cs, k);
        const std::uint64_t t1 = proj(cp, k);
        for (std::uint64_t k2 = 0; k2 < tag_space; ++k2)
          ++joint[((t0 ^ k2) << l) | (t1 ^ k2)];
      }
      const int w = static_cast<int>((cs ^ cp).weight());
      for (std::uint64_t t = 0; t < tag_space; ++t) {
        if (denom[t] == 0) continue;
        for (std::uint64_t tp = 0; tp < tag_space; ++tp) {
          const std::uint64_t num = joint[(t << l) | tp];
          if (num == 0) continue;
          const int wt = std::popcount(t ^ tp);
          using u128 = unsigned __int128;
          const bool greater = u128(num) * best_den > u128(best_num) * denom[t];
          const bool equal = u128(num) * best_den == u128(best_num) * denom[t];
          if (!any || greater ||
              (equal && std::pair{w, wt} < std::pair{best_w, best_wt})) {
            best_num = num;
            best_den = denom[t];
            best_w = w;
            best_wt = wt;
            any = true;
          }
        }
      }
    }
  }

  DeceptionReport report =
      make_report(code, source_len, l, Rational(BigInt(best_num), BigInt(best_den)),
                  best_w, best_wt, Method::bruteforce_definition);
  report.p_impersonation = p_i;
  return report;
}

AuthMatrix authentication_matrix(const RmCode& code,
                                 const SubcodeParams& params,
                                 const Guardrails& guardrails) {
  const auto n = static_cast<std::int64_t>(code.block_length());
  const int source_len = params.source_len;
  const int l = params.tag_len;

  const BigInt k1_count_big = binomial(n, l);
  const BigInt key_count_big = k1_count_big * pow2(l);
  if (key_count_big > guardrails.max_definition_keys)
    throw GuardrailError(
        "authentication matrix: C(n,l) * 2^l exceeds max_definition_keys "
        "(RMACODE_GUARDRAIL_KEYS)");
  if (pow2(source_len) > guardrails.max_definition_sources)
    throw GuardrailError(
        "authentication matrix: 2^M exceeds max_definition_sources (4096)");
  const std::size_t source_count = std::size_t{1} << source_len;
  if (key_count_big * source_count > guardrails.max_matrix_cells)
    throw GuardrailError(
        "authentication matrix: |K| * |S| exceeds max_matrix_cells");

  std::vector<BitVector> codewords;
  codewords.reserve(source_count);
  for (std::size_t ordinal = 0; ordinal < source_count; ++ordinal)
    codewords.push_back(
        encode_source(code, params, source_from_ordinal(ordinal, source_len)));

  AuthMatrix matrix;
  matrix.block_length = static_cast<std::size_t>(n);
  matrix.tag_len = l;
  matrix.key_count = static_cast<std::size_t>(key_count_big);
  matrix.source_count = source_count;
  matrix.tags.reserve(matrix.key_count * source_count);

  const std::uint64_t tag_space = std::uint64_t{1} << l;
  ColexSubsets subsets(static_cast<std::uint32_t>(n),
                       static_cast<std::uint32_t>(l));
  do {
    const auto idx = subsets.indices();
    matrix.k1_subsets.emplace_back(idx.begin(), idx.end());
    for (std::uint64_t k2 = 0; k2 < tag_space; ++k2)
      for (const BitVector& c : codewords)
        matrix.tags.push_back(
            static_cast<std::uint32_t>(projected_value(c, idx) ^ k2));
  } while (subsets.next());
  return matrix;
}

std::string authmatrix_csv(const AuthMatrix& matrix) {
  std::ostringstream out;
  out << "k1,k2";
  for (std::size_t s = 0; s < matrix.source_count; ++s) out << ',' << s;
  out << '\n';
  const std::uint64_t tag_space = std::uint64_t{1} << matrix.tag_len;
  for (std::size_t row = 0; row < matrix.key_count; ++row) {
    const auto& k1 = matrix.k1_subsets[row / tag_space];
    BitVector indicator(matrix.block_length);
    for (std::uint32_t c : k1) indicator.set(c, true);
    out << indicator.to_string() << ','
        << tag_from_value(row % tag_space, matrix.tag_len).to_string();
    for (std::size_t s = 0; s < matrix.source_count; ++s)
      out << ',' << tag_from_value(matrix.at(row, s), matrix.tag_len).to_string();
    out << '\n';
  }
  return out.str();
}

}  // namespace rmacode
