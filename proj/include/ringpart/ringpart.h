/* C interface to the ring partitioning simulator.
 *
 * Every function returns an rp_status. On failure the message of the most
 * recent error on the calling thread is available from rp_last_error().
 * Handles are opaque and owned by the caller; release them with the
 * matching *_destroy function. Destroy functions accept NULL.
 */
#ifndef RINGPART_H
#define RINGPART_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RINGPART_BUILDING)
#    define RP_API __declspec(dllexport)
#  else
#    define RP_API __declspec(dllimport)
#  endif
#else
#  define RP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rp_status {
  RP_OK = 0,
  RP_ERR_INSTANCE = 1,  /* malformed instance */
  RP_ERR_PARAMETER = 2, /* parameter out of range */
  RP_ERR_SIZE = 3,      /* oracle guard exceeded */
  RP_ERR_PARSE = 4,     /* malformed input text or file */
  RP_ERR_IO = 5,
  RP_ERR_INVARIANT = 6, /* internal invariant failed */
  RP_ERR_CONTRACT = 7,
  RP_ERR_NULL = 8,      /* required pointer argument was NULL */
  RP_ERR_INTERNAL = 9
} rp_status;

typedef enum rp_algorithm { RP_ALGO_DYNAMIC = 0, RP_ALGO_STATIC = 1 } rp_algorithm;
typedef enum rp_mts { RP_MTS_SMIN = 0, RP_MTS_WFA = 1 } rp_mts;
typedef enum rp_oracle { RP_ORACLE_STATIC = 0, RP_ORACLE_DYNAMIC = 1 } rp_oracle;

typedef struct rp_config {
  size_t n;   /* processes */
  size_t ell; /* servers */
  size_t k;   /* capacity per server */
  double epsilon;
  uint64_t seed;
} rp_config;

typedef struct rp_costs {
  uint64_t hit;
  uint64_t move;
  uint64_t merge;
  uint64_t mono;
  uint64_t bal;
  uint64_t total;
  size_t max_load;
} rp_costs;

RP_API const char* rp_version(void);
RP_API const char* rp_status_name(rp_status status);
/* Message of the last failure on this thread; "" if none. */
RP_API const char* rp_last_error(void);

/* ---- owned text ------------------------------------------------------- */

typedef struct rp_text rp_text;

RP_API const char* rp_text_data(const rp_text* text);
RP_API size_t rp_text_size(const rp_text* text);
RP_API void rp_text_destroy(rp_text* text);

/* ---- step-by-step simulation ------------------------------------------ */

typedef struct rp_simulator rp_simulator;

/* `initial` holds n server ids, or is NULL for blocks of k. */
RP_API rp_status rp_simulator_create(const rp_config* cfg, rp_algorithm algo, rp_mts mts,
                                     const int32_t* initial, rp_simulator** out);
RP_API void rp_simulator_destroy(rp_simulator* sim);
/* Serves a request on edge (edge, edge+1 mod n); `step` may be NULL. */
RP_API rp_status rp_simulator_serve(rp_simulator* sim, size_t edge, rp_costs* step);
/* Cumulative costs; max_load is the current maximum load. */
RP_API rp_status rp_simulator_totals(const rp_simulator* sim, rp_costs* out);
/* Copies the current coloring into out[0..n). */
RP_API rp_status rp_simulator_coloring(const rp_simulator* sim, int32_t* out, size_t len);
RP_API rp_status rp_simulator_load_bound(const rp_simulator* sim, double* out);

/* ---- experiments ------------------------------------------------------ */

/* Runs the experiment described by a JSON object with keys mirroring the
 * command-line flags (algo, n, ell, k, epsilon, seed, gen, trials, out, mts,
 * with_oracle, threads, initial) and returns the CSV summary. */
RP_API rp_status rp_experiment_run(const char* config_json, rp_text** csv);
/* Same, once per comma-separated value of `param`; the CSV gains a leading column. */
RP_API rp_status rp_sweep_run(const char* config_json, const char* param, const char* values, rp_text** csv);

/* ---- oracles ---------------------------------------------------------- */

RP_API rp_status rp_oracle_ring(const rp_config* cfg, rp_oracle kind, const int32_t* initial,
                                const size_t* requests, size_t count, uint64_t* out);
RP_API rp_status rp_oracle_trace(const char* trace_path, rp_oracle kind, uint64_t* out);

/* ---- verification ----------------------------------------------------- */

/* *ok is 1 when no invariant is violated. `report` may be NULL. */
RP_API rp_status rp_verify_files(const char* const* paths, size_t count, int* ok, rp_text** report);

#ifdef __cplusplus
}
#endif

#endif /* RINGPART_H */
