#include "rmacode/attack_sim.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rmacode/errors.hpp"

namespace rmacode {

namespace {

double z_from(std::uint64_t trials, std::uint64_t successes,
              const Rational& reference, const Rational& empirical) {
  const double p = reference.to_double();
  const double variance = static_cast<double>(trials) * p * (1.0 - p);
  if (variance <= 0.0) {
    if (empirical == reference) return 0.0;
    return empirical > reference ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
  }
  return (static_cast<double>(successes) - static_cast<double>(trials) * p) /
         std::sqrt(variance);
}

AttackOutcome finish(std::uint64_t trials, std::uint64_t successes,
                     Rational reference) {
  AttackOutcome outcome;
  outcome.trials = trials;
  outcome.successes = successes;
  outcome.empirical_rate = Rational(BigInt(successes), BigInt(trials));
  outcome.z_score = z_from(trials, successes, reference, outcome.empirical_rate);
  outcome.reference_rate = std::move(reference);
  return outcome;
}

}  // namespace

SubstitutionStrategy best_substitution_strategy(const RmCode& code,
                                                const SubcodeParams& params,
                                                const Guardrails& guardrails) {
  const int source_len = params.source_len;
  const int l = params.tag_len;
  if (source_len >= 63)
    throw GuardrailError("strategy scan: source space 2^M does not fit a word");
  const std::uint64_t ordinals = (std::uint64_t{1} << source_len) - 1;
  const BigInt per_codeword =
      binomial(static_cast<std::int64_t>(code.block_length()), l);
  if (per_codeword * ordinals > guardrails.max_bruteforce_subsets)
    throw GuardrailError(
        "strategy scan: (2^M - 1) * C(n,l) exceeds max_bruteforce_subsets "
        "(RMACODE_GUARDRAIL_SUBSETS)");

  std::uint64_t best_count = 0;
  std::uint64_t best_ordinal = 1;
  std::uint64_t best_tag = 0;
  for (std::uint64_t ordinal = 1; ordinal <= ordinals; ++ordinal) {
    const BitVector c =
        encode_source(code, params, source_from_ordinal(ordinal, source_len));
    const TagDistribution dist = tag_distribution(c, l, guardrails);
    if (dist.max_count() > best_count) {
      best_count = dist.max_count();
      best_ordinal = ordinal;
      best_tag = dist.argmax();
    }
  }
  return SubstitutionStrategy{source_from_ordinal(best_ordinal, source_len),
                              tag_from_value(best_tag, l)};
}

Rational strategy_success_probability(const AuthConfig& config,
                                      const SubstitutionStrategy& strategy,
                                      const Guardrails& guardrails) {
  if (strategy.delta_source.size() !=
      static_cast<std::size_t>(config.source_len()))
    throw DimensionError("strategy: delta_source length must equal M");
  if (strategy.delta_tag.size() != static_cast<std::size_t>(config.tag_len()))
    throw DimensionError("strategy: delta_tag length must equal l");
  if (strategy.delta_source.is_zero())
    throw ParameterError("strategy: delta_source must be nonzero");
  const BitVector c =
      encode_source(config.code, config.params, strategy.delta_source);
  const TagDistribution dist =
      tag_distribution(c, config.tag_len(), guardrails);
  return Rational(BigInt(dist.count(tag_value(strategy.delta_tag))),
                  dist.total());
}

AttackOutcome run_impersonation(const AuthConfig& config, std::uint64_t trials,
                                std::uint64_t seed, std::string* trace_csv) {
  if (trials < 1) throw ParameterError("run_impersonation: trials must be >= 1");
  const Message forged{BitVector(config.source_len()),
                       BitVector(config.tag_len())};
  if (trace_csv) *trace_csv = "trial,success\n";
  const SplitMix64 root(seed);
  std::uint64_t successes = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    SplitMix64 g = root.split(i);
    const AuthKey key = sample_key(config, g);
    const bool success = verify(config, forged, key);
    if (success) ++successes;
    if (trace_csv)
      *trace_csv += std::to_string(i) + (success ? ",1\n" : ",0\n");
  }
  return finish(trials, successes, p_impersonation(config.tag_len()));
}

AttackOutcome run_substitution(const AuthConfig& config,
                               const SubstitutionStrategy& strategy,
                               std::uint64_t trials, std::uint64_t seed,
                               std::string* trace_csv) {
  if (trials < 1) throw ParameterError("run_substitution: trials must be >= 1");
  Rational reference = strategy_success_probability(config, strategy);

  if (trace_csv) *trace_csv = "trial,success\n";
  const SplitMix64 root(seed);
  std::uint64_t successes = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    SplitMix64 g = root.split(i);
    const AuthKey key = sample_key(config, g);
    const BitVector source = g.bits(config.source_len());
    const BitVector tag = generate_tag(config, source, key);
    const Message substituted{source ^ strategy.delta_source,
                              tag ^ strategy.delta_tag};
    const bool success = verify(config, substituted, key);
    if (success) ++successes;
    if (trace_csv)
      *trace_csv += std::to_string(i) + (success ? ",1\n" : ",0\n");
  }
  return finish(trials, successes, std::move(reference));
}

std::string outcome_record(std::string_view attack, const AuthConfig& config,
                           std::uint64_t seed, const AttackOutcome& outcome) {
  std::ostringstream out;
  char z_buf[32];
  std::snprintf(z_buf, sizeof z_buf, "%.3f", outcome.z_score);
  out << "attack=" << attack << " m=" << config.code.m()
      << " r=" << config.code.r() << " M=" << config.source_len()
      << " l=" << config.tag_len() << " trials=" << outcome.trials
      << " seed=" << seed << " successes=" << outcome.successes
      << " rate=" << outcome.empirical_rate.to_decimal(4)
      << " reference=" << outcome.reference_rate.to_decimal(4) << " z=" << z_buf;
  return out.str();
}

}  // namespace rmacode
