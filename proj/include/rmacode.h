/* rmacode — systematic authentication codes from Reed-Muller projections.
 *
 * C interface to the shared library: opaque handles, status-code returns,
 * caller-owned output parameters. Bit arrays are passed one bit per byte
 * (values 0 or 1); packed formats are documented per function. Strings
 * returned through char** are heap-allocated and released with
 * rma_string_free().
 */
#ifndef RMACODE_H
#define RMACODE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rma_status {
  RMA_OK = 0,
  RMA_ERR_PARAM = 1,      /* invalid or out-of-range parameters */
  RMA_ERR_DIMENSION = 2,  /* vector length mismatch */
  RMA_ERR_GUARDRAIL = 3,  /* enumeration limit exceeded */
  RMA_ERR_NO_WITNESS = 4, /* closed form found no prefix-form codeword */
  RMA_ERR_FORMAT = 5,     /* malformed serialized input */
  RMA_ERR_INTERNAL = 6
} rma_status;

/* Static name for a status code ("ok", "param", ...). */
const char *rma_status_name(rma_status status);

/* Detail message for the most recent failure on this thread. */
const char *rma_last_error(void);

void rma_string_free(char *str);

/* ---- configuration ---- */

typedef struct rma_config rma_config;

/* Builds RM(m, r) and validates the (source_len, tag_len) sub-code. */
rma_status rma_config_create(int m, int r, int source_len, int tag_len,
                             rma_config **out);
void rma_config_destroy(rma_config *config);

int rma_config_m(const rma_config *config);
int rma_config_r(const rma_config *config);
int rma_config_source_len(const rma_config *config);
int rma_config_tag_len(const rma_config *config);
int rma_config_block_length(const rma_config *config); /* n = 2^m */
int rma_config_dimension(const rma_config *config);

/* Enumeration limits used by analysis run through this config. Zero keeps
 * the current value. */
void rma_config_set_guardrails(rma_config *config, uint64_t max_definition_keys,
                               uint64_t max_bruteforce_subsets);

/* Generator matrix as text: one row per line of '0'/'1' characters. */
rma_status rma_generator_text(const rma_config *config, char **out);

/* ---- keys ---- */

typedef struct rma_key rma_key;

/* Uniform key over K1 x K2, deterministic in the seed. */
rma_status rma_key_sample(const rma_config *config, uint64_t seed,
                          rma_key **out);
void rma_key_destroy(rma_key *key);

/* Two-line key file text (header with m/r/M/l, then hex-packed k1 and k2). */
rma_status rma_key_to_text(const rma_config *config, const rma_key *key,
                           char **out);

/* Parses key file text; returns both the embedded configuration and the key. */
rma_status rma_key_parse(const char *text, rma_config **config_out,
                         rma_key **key_out);

/* ---- tagging and messages ---- */

/* source_bits: M entries. tag_out: l entries. */
rma_status rma_generate_tag(const rma_config *config, const rma_key *key,
                            const uint8_t *source_bits, uint8_t *tag_out);

/* accept_out receives 1 when the tag verifies, 0 otherwise. */
rma_status rma_verify(const rma_config *config, const rma_key *key,
                      const uint8_t *source_bits, const uint8_t *tag_bits,
                      int *accept_out);

/* Wire size of an encoded message: ceil((M + l) / 8) bytes. */
size_t rma_message_size(const rma_config *config);

/* Packs [source, tag] MSB-first into bytes_out (rma_message_size bytes). */
rma_status rma_message_encode(const rma_config *config,
                              const uint8_t *source_bits,
                              const uint8_t *tag_bits, uint8_t *bytes_out);

/* Inverse of rma_message_encode; rejects wrong lengths and nonzero padding. */
rma_status rma_message_decode(const rma_config *config, const uint8_t *bytes,
                              size_t nbytes, uint8_t *source_bits_out,
                              uint8_t *tag_bits_out);

/* ---- deception analysis ---- */

typedef enum rma_method {
  RMA_METHOD_CLOSED_FORM = 0,
  RMA_METHOD_BRUTEFORCE = 1,
  RMA_METHOD_DEFINITION = 2
} rma_method;

typedef struct rma_report rma_report;

rma_status rma_analyze(const rma_config *config, rma_method method,
                       rma_report **out);
void rma_report_destroy(rma_report *report);

const char *rma_report_method(const rma_report *report);
const char *rma_report_p_i_exact(const rma_report *report); /* "1/8" */
const char *rma_report_p_i_dec4(const rma_report *report);  /* "0.1250" */
const char *rma_report_p_s_exact(const rma_report *report);
const char *rma_report_p_s_dec4(const rma_report *report);
int rma_report_witness_weight(const rma_report *report);
int rma_report_witness_tag_weight(const rma_report *report);

/* One line: m r M l P_I(exact) P_I(dec4) P_S(exact) P_S(dec4) w wt method. */
rma_status rma_report_record(const rma_report *report, char **out);

/* Full key-by-source tag table as CSV (header row of source indices). */
rma_status rma_authmatrix_csv(const rma_config *config, char **out);

/* ---- attack simulation ---- */

typedef struct rma_outcome rma_outcome;

rma_status rma_simulate_impersonation(const rma_config *config, uint64_t trials,
                                      uint64_t seed, rma_outcome **out);

/* delta_source_bits (M entries) and delta_tag_bits (l entries) select the
 * substitution offsets; pass both as NULL to derive the optimal strategy. */
rma_status rma_simulate_substitution(const rma_config *config,
                                     const uint8_t *delta_source_bits,
                                     const uint8_t *delta_tag_bits,
                                     uint64_t trials, uint64_t seed,
                                     rma_outcome **out);

/* As above, additionally returning a per-trial CSV ("trial,success"). */
rma_status rma_simulate_impersonation_traced(const rma_config *config,
                                             uint64_t trials, uint64_t seed,
                                             rma_outcome **out,
                                             char **trace_csv_out);
rma_status rma_simulate_substitution_traced(const rma_config *config,
                                            const uint8_t *delta_source_bits,
                                            const uint8_t *delta_tag_bits,
                                            uint64_t trials, uint64_t seed,
                                            rma_outcome **out,
                                            char **trace_csv_out);

void rma_outcome_destroy(rma_outcome *outcome);

uint64_t rma_outcome_trials(const rma_outcome *outcome);
uint64_t rma_outcome_successes(const rma_outcome *outcome);
const char *rma_outcome_rate_exact(const rma_outcome *outcome);
const char *rma_outcome_rate_dec4(const rma_outcome *outcome);
const char *rma_outcome_reference_exact(const rma_outcome *outcome);
const char *rma_outcome_reference_dec4(const rma_outcome *outcome);
double rma_outcome_z(const rma_outcome *outcome);

/* attack=<imp|sub> m=.. r=.. M=.. l=.. trials=.. seed=.. successes=..
 * rate=.. reference=.. z=..  */
rma_status rma_outcome_record(const rma_config *config, const rma_outcome *outcome,
                              const char *attack, uint64_t seed, char **out);

#ifdef __cplusplus
}
#endif

#endif /* RMACODE_H */
