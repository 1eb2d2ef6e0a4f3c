/* C interface to the exact-repair MSR code library.
 *
 * All functions return MSR_OK (0) or a negative-free positive status from the
 * enum below; msr_last_error() describes the most recent failure on the
 * calling thread. Strings and buffers handed out by the library are owned by
 * the caller and released with msr_free().
 */
#ifndef MSRCODE_H
#define MSRCODE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct msr_code msr_code;
typedef struct msr_cluster msr_cluster;

enum msr_status {
  MSR_OK = 0,
  MSR_ERR_BAD_ARGUMENT = 1,
  MSR_ERR_INADMISSIBLE = 2,
  MSR_ERR_ZERO_INVERSE = 3,
  MSR_ERR_SINGULAR = 4,
  MSR_ERR_INCONSISTENT = 5,
  MSR_ERR_DIMENSION_MISMATCH = 6,
  MSR_ERR_LENGTH_MISMATCH = 7,
  MSR_ERR_CONSTRUCTION_FAILED = 8,
  MSR_ERR_PARSE = 9,
  MSR_ERR_VERSION_MISMATCH = 10,
  MSR_ERR_RANK_DEFICIENT = 11,
  MSR_ERR_WRONG_HELPER_SHAPE = 12,
  MSR_ERR_SINGULAR_BASIS = 13,
  MSR_ERR_FIELD_TOO_SMALL = 14,
  MSR_ERR_ALREADY_FAILED = 15,
  MSR_ERR_DOUBLE_FAILURE = 16,
  MSR_ERR_NO_FAILURE = 17,
  MSR_ERR_BAD_SUBSET = 18,
  MSR_ERR_UNKNOWN_NODE = 19,
  MSR_ERR_OVERFLOW = 20,
  MSR_ERR_IO = 21,
  MSR_ERR_INTERNAL = 22,
};

const char* msr_status_name(int status);
const char* msr_last_error(void);
void msr_free(void* p);

/* ---- code construction and inspection ---- */

int msr_code_construct(uint32_t n, uint32_t k, uint32_t d, uint32_t m,
                       uint64_t q, uint64_t seed, msr_code** out);
int msr_code_scalar42(msr_code** out);
int msr_code_load(const char* text, msr_code** out);
int msr_code_describe(const msr_code* code, char** out_text);
void msr_code_free(msr_code* code);

typedef struct msr_code_info {
  uint32_t n, k, d, m;
  uint64_t q, seed;
  uint32_t exponent_count;      /* N = (k-1)(d-k+1) */
  uint64_t subsymbols_per_unit; /* B = m^N */
  uint64_t subsymbols_per_node; /* alpha_sub = (d-k+1) B */
  uint64_t total_subsymbols;    /* M_sub = k alpha_sub */
  uint64_t file_units;          /* M = k (d-k+1) */
  uint32_t attempts_used;       /* resamples consumed, >= 1 */
  int is_scalar_baseline;
} msr_code_info;

int msr_code_get_info(const msr_code* code, msr_code_info* out);

typedef struct msr_verify_summary {
  uint64_t mds_total, mds_passed;
  uint32_t repair_total, repair_passed;
  int all_ok;
} msr_verify_summary;

int msr_code_verify(const msr_code* code, msr_verify_summary* out);

/* units: k*alpha_sub values unit-major; blocks: n*alpha_sub values out. */
int msr_code_encode(const msr_code* code, const uint64_t* units,
                    size_t units_len, uint64_t* blocks, size_t blocks_len);

/* ---- bandwidth accounting ---- */

/* Exact rationals rendered canonically ("4", "97/8"). */
int msr_cutset_point(uint32_t n, uint32_t k, uint32_t d, uint64_t file_units,
                     char** alpha, char** gamma, char** beta);
int msr_gamma_formula(uint32_t k, uint32_t d, uint32_t m, char** gamma);
/* gamma(m) - d, the distance above the cutset bound. */
int msr_gamma_excess(uint32_t k, uint32_t d, uint32_t m, char** excess);
int msr_rational_to_decimal(const char* rational, unsigned digits, char** out);
/* sign of a - b into *cmp */
int msr_rational_cmp(const char* a, const char* b, int* cmp);

/* ---- cluster simulation ---- */

int msr_cluster_ingest(const msr_code* code, const uint8_t* bytes, size_t len,
                       msr_cluster** out);
/* Raw in-field payload (one stripe): k*alpha_sub values, unit-major. */
int msr_cluster_ingest_units(const msr_code* code, const uint64_t* units,
                             size_t len, msr_cluster** out);
int msr_cluster_fail(msr_cluster* cluster, uint32_t node);
/* helpers may be NULL/0 for the default policy (d lowest-id live nodes). */
int msr_cluster_repair(msr_cluster* cluster, const uint32_t* helpers,
                       size_t helper_count);
int msr_cluster_read(msr_cluster* cluster, const uint32_t* nodes, size_t count,
                     uint8_t** bytes, size_t* len);
int msr_cluster_read_units(msr_cluster* cluster, const uint32_t* nodes,
                           size_t count, uint64_t** units, size_t* len);
int msr_cluster_node_block(const msr_cluster* cluster, uint32_t node,
                           uint64_t** data, size_t* len);
int msr_cluster_last_repair(const msr_cluster* cluster, uint64_t* subsymbols,
                            uint64_t* stripes, char** gamma);
int msr_cluster_trace(const msr_cluster* cluster, char** text);
int msr_cluster_metrics(const msr_cluster* cluster, char** text);
void msr_cluster_free(msr_cluster* cluster);

/* ---- scalar (4,2,3) baseline ---- */

/* survivors: 3 node ids; survivor_blocks: 3*2 symbols in the same order.
 * restored: 2 symbols; download_symbols: the symbol each survivor sent. */
int msr_scalar42_repair(const msr_code* code, uint32_t failed,
                        const uint32_t* survivors,
                        const uint64_t* survivor_blocks, uint64_t* restored,
                        uint64_t* download_symbols);

#ifdef __cplusplus
}
#endif

#endif /* MSRCODE_H */
