#include "rmacode.h"

#include <cstring>
#include <string>

#include "rmacode/attack_sim.hpp"
#include "rmacode/auth.hpp"
#include "rmacode/deception.hpp"
#include "rmacode/errors.hpp"

using namespace rmacode;

struct rma_config {
  AuthConfig config;
  Guardrails guardrails;
};

struct rma_key {
  AuthKey key;
};

struct rma_report {
  DeceptionReport report;
  std::string p_i_exact, p_i_dec4, p_s_exact, p_s_dec4;
};

struct rma_outcome {
  AttackOutcome outcome;
  std::string rate_exact, rate_dec4, reference_exact, reference_dec4;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
rma_status wrap(Fn&& fn) {
  try {
    fn();
    return RMA_OK;
  } catch (const ParameterError& e) {
    g_last_error = e.what();
    return RMA_ERR_PARAM;
  } catch (const DimensionError& e) {
    g_last_error = e.what();
    return RMA_ERR_DIMENSION;
  } catch (const GuardrailError& e) {
    g_last_error = e.what();
    return RMA_ERR_GUARDRAIL;
  } catch (const NoWitnessError& e) {
    g_last_error = e.what();
    return RMA_ERR_NO_WITNESS;
  } catch (const FormatError& e) {
    g_last_error = e.what();
    return RMA_ERR_FORMAT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RMA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RMA_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

BitVector bits_from_bytes(const uint8_t* bits, std::size_t len,
                          const char* what) {
  if (bits == nullptr)
    throw ParameterError(std::string(what) + ": null bit array");
  BitVector v(len);
  for (std::size_t i = 0; i < len; ++i) v.set(i, bits[i] != 0);
  return v;
}

void bits_to_bytes(const BitVector& v, uint8_t* out) {
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.get(i) ? 1 : 0;
}

rma_report* make_report_handle(DeceptionReport report) {
  auto* handle = new rma_report{std::move(report), {}, {}, {}, {}};
  handle->p_i_exact = handle->report.p_impersonation.to_fraction_string();
  handle->p_i_dec4 = handle->report.p_impersonation.to_decimal(4);
  handle->p_s_exact = handle->report.p_substitution.to_fraction_string();
  handle->p_s_dec4 = handle->report.p_substitution.to_decimal(4);
  return handle;
}

rma_outcome* make_outcome_handle(AttackOutcome outcome) {
  auto* handle = new rma_outcome{std::move(outcome), {}, {}, {}, {}};
  handle->rate_exact = handle->outcome.empirical_rate.to_fraction_string();
  handle->rate_dec4 = handle->outcome.empirical_rate.to_decimal(4);
  handle->reference_exact = handle->outcome.reference_rate.to_fraction_string();
  handle->reference_dec4 = handle->outcome.reference_rate.to_decimal(4);
  return handle;
}

}  // namespace

extern "C" {

const char* rma_status_name(rma_status status) {
  switch (status) {
    case RMA_OK:
      return "ok";
    case RMA_ERR_PARAM:
      return "param";
    case RMA_ERR_DIMENSION:
      return "dimension";
    case RMA_ERR_GUARDRAIL:
      return "guardrail";
    case RMA_ERR_NO_WITNESS:
      return "no_witness";
    case RMA_ERR_FORMAT:
      return "format";
    case RMA_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* rma_last_error(void) { return g_last_error.c_str(); }

void rma_string_free(char* str) { delete[] str; }

rma_status rma_config_create(int m, int r, int source_len, int tag_len,
                             rma_config** out) {
  return wrap([&] {
    if (out == nullptr) throw ParameterError("config_create: null output");
    *out = new rma_config{AuthConfig::create(m, r, source_len, tag_len), {}};
  });
}

void rma_config_destroy(rma_config* config) { delete config; }

int rma_config_m(const rma_config* config) { return config->config.code.m(); }
int rma_config_r(const rma_config* config) { return config->config.code.r(); }
int rma_config_source_len(const rma_config* config) {
  return config->config.source_len();
}
int rma_config_tag_len(const rma_config* config) {
  return config->config.tag_len();
}
int rma_config_block_length(const rma_config* config) {
  return static_cast<int>(config->config.block_length());
}
int rma_config_dimension(const rma_config* config) {
  return static_cast<int>(config->config.code.dimension());
}

void rma_config_set_guardrails(rma_config* config, uint64_t max_definition_keys,
                               uint64_t max_bruteforce_subsets) {
  if (max_definition_keys)
    config->guardrails.max_definition_keys = max_definition_keys;
  if (max_bruteforce_subsets)
    config->guardrails.max_bruteforce_subsets = max_bruteforce_subsets;
}

rma_status rma_generator_text(const rma_config* config, char** out) {
  return wrap([&] { *out = dup_string(config->config.code.generator_text()); });
}

rma_status rma_key_sample(const rma_config* config, uint64_t seed,
                          rma_key** out) {
  return wrap([&] { *out = new rma_key{sample_key(config->config, seed)}; });
}

void rma_key_destroy(rma_key* key) { delete key; }

rma_status rma_key_to_text(const rma_config* config, const rma_key* key,
                           char** out) {
  return wrap([&] { *out = dup_string(key_to_text(config->config, key->key)); });
}

rma_status rma_key_parse(const char* text, rma_config** config_out,
                         rma_key** key_out) {
  return wrap([&] {
    if (text == nullptr) throw FormatError("key_parse: null text");
    ParsedKeyFile parsed = parse_key_text(text);
    auto config = AuthConfig::create(parsed.m, parsed.r, parsed.source_len,
                                     parsed.tag_len);
    for (std::uint32_t c : parsed.key.coords)
      if (c >= config.block_length())
        throw FormatError("key_parse: coordinate out of range");
    *config_out = new rma_config{std::move(config), {}};
    *key_out = new rma_key{std::move(parsed.key)};
  });
}

rma_status rma_generate_tag(const rma_config* config, const rma_key* key,
                            const uint8_t* source_bits, uint8_t* tag_out) {
  return wrap([&] {
    const BitVector s = bits_from_bytes(
        source_bits, config->config.source_len(), "generate_tag");
    bits_to_bytes(generate_tag(config->config, s, key->key), tag_out);
  });
}

rma_status rma_verify(const rma_config* config, const rma_key* key,
                      const uint8_t* source_bits, const uint8_t* tag_bits,
                      int* accept_out) {
  return wrap([&] {
    const Message msg{
        bits_from_bytes(source_bits, config->config.source_len(), "verify"),
        bits_from_bytes(tag_bits, config->config.tag_len(), "verify")};
    *accept_out = verify(config->config, msg, key->key) ? 1 : 0;
  });
}

size_t rma_message_size(const rma_config* config) {
  return message_byte_size(config->config);
}

rma_status rma_message_encode(const rma_config* config,
                              const uint8_t* source_bits,
                              const uint8_t* tag_bits, uint8_t* bytes_out) {
  return wrap([&] {
    const Message msg{
        bits_from_bytes(source_bits, config->config.source_len(), "encode"),
        bits_from_bytes(tag_bits, config->config.tag_len(), "encode")};
    const auto bytes = encode_message(msg);
    std::memcpy(bytes_out, bytes.data(), bytes.size());
  });
}

rma_status rma_message_decode(const rma_config* config, const uint8_t* bytes,
                              size_t nbytes, uint8_t* source_bits_out,
                              uint8_t* tag_bits_out) {
  return wrap([&] {
    const Message msg =
        decode_message(config->config, std::span(bytes, nbytes));
    bits_to_bytes(msg.source, source_bits_out);
    bits_to_bytes(msg.tag, tag_bits_out);
  });
}

rma_status rma_analyze(const rma_config* config, rma_method method,
                       rma_report** out) {
  return wrap([&] {
    const auto& code = config->config.code;
    const auto& params = config->config.params;
    DeceptionReport report;
    switch (method) {
      case RMA_METHOD_CLOSED_FORM:
        report = p_substitution_closed_form(code, params);
        break;
      case RMA_METHOD_BRUTEFORCE:
        report = p_substitution_bruteforce(code, params, config->guardrails);
        break;
      case RMA_METHOD_DEFINITION:
        report =
            p_deception_from_definitions(code, params, config->guardrails);
        break;
      default:
        throw ParameterError("analyze: unknown method");
    }
    *out = make_report_handle(std::move(report));
  });
}

void rma_report_destroy(rma_report* report) { delete report; }

const char* rma_report_method(const rma_report* report) {
  return method_name(report->report.method).data();
}
const char* rma_report_p_i_exact(const rma_report* report) {
  return report->p_i_exact.c_str();
}
const char* rma_report_p_i_dec4(const rma_report* report) {
  return report->p_i_dec4.c_str();
}
const char* rma_report_p_s_exact(const rma_report* report) {
  return report->p_s_exact.c_str();
}
const char* rma_report_p_s_dec4(const rma_report* report) {
  return report->p_s_dec4.c_str();
}
int rma_report_witness_weight(const rma_report* report) {
  return report->report.witness_weight;
}
int rma_report_witness_tag_weight(const rma_report* report) {
  return report->report.witness_tag_weight;
}

rma_status rma_report_record(const rma_report* report, char** out) {
  return wrap([&] { *out = dup_string(report_record(report->report)); });
}

rma_status rma_authmatrix_csv(const rma_config* config, char** out) {
  return wrap([&] {
    const AuthMatrix matrix = authentication_matrix(
        config->config.code, config->config.params, config->guardrails);
    *out = dup_string(authmatrix_csv(matrix));
  });
}

rma_status rma_simulate_impersonation(const rma_config* config, uint64_t trials,
                                      uint64_t seed, rma_outcome** out) {
  return wrap([&] {
    *out = make_outcome_handle(run_impersonation(config->config, trials, seed));
  });
}

namespace {

SubstitutionStrategy resolve_strategy(const rma_config* config,
                                      const uint8_t* delta_source_bits,
                                      const uint8_t* delta_tag_bits) {
  if ((delta_source_bits == nullptr) != (delta_tag_bits == nullptr))
    throw ParameterError(
        "simulate_substitution: delta offsets must be given together");
  if (delta_source_bits == nullptr)
    return best_substitution_strategy(config->config.code,
                                      config->config.params,
                                      config->guardrails);
  return SubstitutionStrategy{
      bits_from_bytes(delta_source_bits, config->config.source_len(),
                      "delta_source"),
      bits_from_bytes(delta_tag_bits, config->config.tag_len(), "delta_tag")};
}

}  // namespace

rma_status rma_simulate_substitution(const rma_config* config,
                                     const uint8_t* delta_source_bits,
                                     const uint8_t* delta_tag_bits,
                                     uint64_t trials, uint64_t seed,
                                     rma_outcome** out) {
  return wrap([&] {
    const SubstitutionStrategy strategy =
        resolve_strategy(config, delta_source_bits, delta_tag_bits);
    *out = make_outcome_handle(
        run_substitution(config->config, strategy, trials, seed));
  });
}

rma_status rma_simulate_impersonation_traced(const rma_config* config,
                                             uint64_t trials, uint64_t seed,
                                             rma_outcome** out,
                                             char** trace_csv_out) {
  return wrap([&] {
    std::string trace;
    *out = make_outcome_handle(
        run_impersonation(config->config, trials, seed, &trace));
    *trace_csv_out = dup_string(trace);
  });
}

rma_status rma_simulate_substitution_traced(const rma_config* config,
                                            const uint8_t* delta_source_bits,
                                            const uint8_t* delta_tag_bits,
                                            uint64_t trials, uint64_t seed,
                                            rma_outcome** out,
                                            char** trace_csv_out) {
  return wrap([&] {
    const SubstitutionStrategy strategy =
        resolve_strategy(config, delta_source_bits, delta_tag_bits);
    std::string trace;
    *out = make_outcome_handle(
        run_substitution(config->config, strategy, trials, seed, &trace));
    *trace_csv_out = dup_string(trace);
  });
}

void rma_outcome_destroy(rma_outcome* outcome) { delete outcome; }

uint64_t rma_outcome_trials(const rma_outcome* outcome) {
  return outcome->outcome.trials;
}
uint64_t rma_outcome_successes(const rma_outcome* outcome) {
  return outcome->outcome.successes;
}
const char* rma_outcome_rate_exact(const rma_outcome* outcome) {
  return outcome->rate_exact.c_str();
}
const char* rma_outcome_rate_dec4(const rma_outcome* outcome) {
  return outcome->rate_dec4.c_str();
}
const char* rma_outcome_reference_exact(const rma_outcome* outcome) {
  return outcome->reference_exact.c_str();
}
const char* rma_outcome_reference_dec4(const rma_outcome* outcome) {
  return outcome->reference_dec4.c_str();
}
double rma_outcome_z(const rma_outcome* outcome) {
  return outcome->outcome.z_score;
}

rma_status rma_outcome_record(const rma_config* config,
                              const rma_outcome* outcome, const char* attack,
                              uint64_t seed, char** out) {
  return wrap([&] {
    *out = dup_string(
        outcome_record(attack, config->config, seed, outcome->outcome));
  });
}

}  // extern "C"
