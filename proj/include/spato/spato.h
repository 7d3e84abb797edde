/*
 * spato — deterministic task-offloading matcher for multi-provider fog
 * networks. Opaque handles, integer status codes; every function that can
 * fail returns a status and reports detail through spato_last_error().
 *
 * All handles must be released with their matching *_free function. A
 * matching handle stays tied to the instance it was produced from; passing
 * it alongside a different instance is rejected.
 */
#ifndef SPATO_SPATO_H_
#define SPATO_SPATO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SPATO_API __declspec(dllexport)
#else
#define SPATO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spato_status {
  SPATO_OK = 0,
  SPATO_ERR_INVALID_ARGUMENT = 1, /* bad handle, null out-param, bad enum */
  SPATO_ERR_PARSE = 2,            /* malformed config/instance/matching text */
  SPATO_ERR_VALIDATION = 3,       /* well-formed but violates a constraint */
  SPATO_ERR_IO = 4,               /* file unreadable or unwritable */
  SPATO_ERR_LIMIT = 5,            /* buffer too small */
  SPATO_ERR_INTERNAL = 6
} spato_status;

typedef enum spato_allocator {
  SPATO_ALLOCATOR_SPATO = 0,  /* utility/efficiency stable matcher */
  SPATO_ALLOCATOR_SMETO = 1,  /* energy/gain deferred-acceptance baseline */
  SPATO_ALLOCATOR_RANDOM = 2  /* seeded uniform feasible assignment */
} spato_allocator;

typedef enum spato_worklist {
  SPATO_WORKLIST_FIFO = 0,
  SPATO_WORKLIST_LIFO = 1
} spato_worklist;

typedef enum spato_profile {
  SPATO_PROFILE_SPATO = 0,  /* utility task lists, efficiency provider lists */
  SPATO_PROFILE_SMETO = 1   /* energy task lists, gain node lists */
} spato_profile;

typedef struct spato_config spato_config;
typedef struct spato_instance spato_instance;
typedef struct spato_matching spato_matching;

typedef struct spato_match_record {
  uint32_t task_id;
  uint32_t fn_id;
  uint32_t sp_id;
  double latency_s;  /* transmission + execution */
  double energy_j;   /* device transmission + node execution */
  int met_deadline;  /* 1 if latency_s <= deadline, else 0 */
} spato_match_record;

typedef struct spato_verify_report {
  int stable;                   /* 1 when no blocking pair exists */
  uint32_t blocking_pairs;      /* count under the chosen profile */
  int task_single_fn;           /* each task assigned at most one node */
  int fn_within_quota;
  int sp_within_capacity;
  int views_consistent;        /* task/node/provider views agree */
  int pairs_feasible;          /* every assignment lies in the task's feasible set */
  char detail[256];            /* first violation, empty when all hold */
} spato_verify_report;

typedef struct spato_blocking_pair {
  uint32_t task_id;
  uint32_t fn_id;
} spato_blocking_pair;

typedef struct spato_metrics {
  double total_energy_j;
  double mean_offload_time_s;  /* over matched tasks, 0 when none */
  uint32_t matched;
  uint32_t on_time;            /* matched and within deadline */
  uint32_t unmatched;
  uint32_t late;
  uint32_t outages;            /* unmatched + late */
  double outage_rate;          /* outages / task count */
  double revenue_total_usd;    /* tariff * Mbit / deadline over on-time tasks */
} spato_metrics;

SPATO_API const char* spato_version(void);

/* Message for the calling thread's most recent failure; empty, never NULL. */
SPATO_API const char* spato_last_error(void);

/* Stable name for a status code ("SPATO_OK", ...). */
SPATO_API const char* spato_status_name(int status);

/* ---- configuration ------------------------------------------------- */

SPATO_API int spato_config_create(spato_config** out);
SPATO_API int spato_config_load(const char* path, spato_config** out);
SPATO_API int spato_config_set(spato_config* config, const char* key, const char* value);
/* Writes the value as text; fails with SPATO_ERR_LIMIT when size is short. */
SPATO_API int spato_config_get(const spato_config* config, const char* key,
                               char* buffer, size_t size);
SPATO_API void spato_config_free(spato_config* config);

/* ---- instances ----------------------------------------------------- */

/* Draws a full network + task set; identical (config, seed) pairs yield
 * byte-identical instances. */
SPATO_API int spato_instance_generate(const spato_config* config, uint64_t seed,
                                      spato_instance** out);
SPATO_API int spato_instance_save(const spato_instance* instance, const char* path);
SPATO_API int spato_instance_load(const char* path, spato_instance** out);
SPATO_API int spato_instance_counts(const spato_instance* instance, uint32_t* tasks,
                                    uint32_t* fns, uint32_t* sps);
SPATO_API void spato_instance_free(spato_instance* instance);

/* ---- allocation ---------------------------------------------------- */

/* rng_seed is only consumed by SPATO_ALLOCATOR_RANDOM; worklist only steers
 * the proposal order of SPATO_ALLOCATOR_SPATO (the result is order-invariant,
 * which spato_verify can confirm). */
SPATO_API int spato_allocate(const spato_instance* instance, int allocator,
                             uint64_t rng_seed, int worklist, spato_matching** out);

SPATO_API int spato_matching_count(const spato_matching* matching, uint32_t* matched);
/* Records are indexed 0..matched-1 in ascending task id. */
SPATO_API int spato_matching_record(const spato_matching* matching, uint32_t index,
                                    spato_match_record* record);
SPATO_API int spato_matching_save(const spato_matching* matching, const char* path);
SPATO_API int spato_matching_load(const char* path, const spato_instance* instance,
                                  spato_matching** out);
SPATO_API void spato_matching_free(spato_matching* matching);

/* ---- verification & metrics ---------------------------------------- */

SPATO_API int spato_verify(const spato_instance* instance, const spato_matching* matching,
                           int profile, spato_verify_report* report);
/* Fills up to capacity pairs; *count always receives the true total. */
SPATO_API int spato_blocking_pairs(const spato_instance* instance,
                                   const spato_matching* matching, int profile,
                                   spato_blocking_pair* pairs, uint32_t capacity,
                                   uint32_t* count);

SPATO_API int spato_compute_metrics(const spato_instance* instance,
                                    const spato_matching* matching, spato_metrics* out);
/* values receives one revenue figure per provider id. */
SPATO_API int spato_revenue_per_sp(const spato_instance* instance,
                                   const spato_matching* matching, double* values,
                                   uint32_t capacity, uint32_t* count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPATO_SPATO_H_ */
