#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rmacode/auth.hpp"
#include "rmacode/deception.hpp"
#include "rmacode/rational.hpp"

namespace rmacode {

// Offset strategy for the substitution game: the adversary replaces an
// observed (s, t) with (s + delta_source, t + delta_tag).
struct SubstitutionStrategy {
  BitVector delta_source;  // must be nonzero
  BitVector delta_tag;
};

struct AttackOutcome {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  Rational empirical_rate;
  Rational reference_rate;
  double z_score = 0.0;
};

// Scans the tag distribution of every nonzero sub-code codeword and returns
// the offset pair with the highest exact success probability; that
// probability equals P_S.
SubstitutionStrategy best_substitution_strategy(
    const RmCode& code, const SubcodeParams& params,
    const Guardrails& guardrails = {});

// Exact success probability of a fixed strategy: the tag-distribution count
// of delta_tag for the codeword of delta_source, over C(n, l).
Rational strategy_success_probability(const AuthConfig& config,
                                      const SubstitutionStrategy& strategy,
                                      const Guardrails& guardrails = {});

// Per trial: fresh uniform key; the adversary inserts a fixed message without
// observing anything; success iff it verifies. Reference rate 1/2^l.
// trace_csv, when given, receives one "trial,success" row per trial.
AttackOutcome run_impersonation(const AuthConfig& config, std::uint64_t trials,
                                std::uint64_t seed,
                                std::string* trace_csv = nullptr);

// Per trial: fresh uniform key and uniform source; the adversary observes the
// tagged message and substitutes the offset one; success iff it verifies
// under the same key. Reference rate is the strategy's exact probability.
AttackOutcome run_substitution(const AuthConfig& config,
                               const SubstitutionStrategy& strategy,
                               std::uint64_t trials, std::uint64_t seed,
                               std::string* trace_csv = nullptr);

// Single-line record:
// attack=<imp|sub> m=.. r=.. M=.. l=.. trials=.. seed=.. successes=..
// rate=<dec4> reference=<dec4> z=<float>
std::string outcome_record(std::string_view attack, const AuthConfig& config,
                           std::uint64_t seed, const AttackOutcome& outcome);

}  // namespace rmacode
