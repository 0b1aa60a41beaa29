/*
 * smcsim C API.
 *
 * Opaque handles over the C++ simulation core. Every function that can fail
 * returns an smc_status; on failure a human-readable message is available
 * from smc_last_error() on the same thread until the next failing call.
 * Handles are owned by the caller and released with the matching *_free.
 */
#ifndef SMCSIM_SMCSIM_H
#define SMCSIM_SMCSIM_H

#include <stddef.h>

#if defined(SMCSIM_BUILDING_LIBRARY)
#define SMCSIM_API __attribute__((visibility("default")))
#else
#define SMCSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smc_status {
  SMC_OK = 0,
  SMC_ERR_CONFIG = 1,   /* invalid scenario, unknown key, bad argument value */
  SMC_ERR_RUNTIME = 2,  /* the simulation diverged */
  SMC_ERR_IO = 3,       /* a file could not be read or written */
  SMC_ERR_ARGUMENT = 4  /* null handle, index out of range, buffer misuse */
} smc_status;

typedef struct smc_scenario smc_scenario;
typedef struct smc_run smc_run;
typedef struct smc_comparison smc_comparison;

SMCSIM_API const char* smc_version(void);
SMCSIM_API const char* smc_last_error(void);

/* Number of CSV columns and their names, in log order. */
SMCSIM_API size_t smc_log_column_count(void);
SMCSIM_API const char* smc_log_column_name(size_t index);

/* --- scenarios ------------------------------------------------------------ */

/* Parses a YAML scenario. Syntax, units and key names are checked here;
 * call smc_scenario_validate for the remaining constraints. */
SMCSIM_API smc_status smc_scenario_parse_file(const char* path, smc_scenario** out);
SMCSIM_API smc_status smc_scenario_parse_string(const char* yaml, const char* name, smc_scenario** out);
SMCSIM_API smc_status smc_scenario_validate(const smc_scenario* scenario);
SMCSIM_API void smc_scenario_free(smc_scenario* scenario);

SMCSIM_API smc_status smc_scenario_set_dt(smc_scenario* scenario, double dt);
SMCSIM_API smc_status smc_scenario_set_duration(smc_scenario* scenario, double duration);
/* "smc", "nsmc" or "ncsmc". */
SMCSIM_API smc_status smc_scenario_set_controller(smc_scenario* scenario, const char* controller);

/* Name of the scenario; valid until the handle is freed. */
SMCSIM_API const char* smc_scenario_name(const smc_scenario* scenario);

/* Resolved scenario (SI units) as YAML. Copies at most `capacity` bytes
 * including the terminator; `*required` receives the full size needed.
 * Passing buffer = NULL and capacity = 0 only queries the size. */
SMCSIM_API smc_status smc_scenario_describe(const smc_scenario* scenario, char* buffer, size_t capacity,
                                            size_t* required);

/* --- single runs ------------------------------------------------------------ */

SMCSIM_API smc_status smc_run_scenario(const smc_scenario* scenario, smc_run** out);
SMCSIM_API void smc_run_free(smc_run* run);

SMCSIM_API size_t smc_run_record_count(const smc_run* run);
/* Copies record `index` into `row` (smc_log_column_count() doubles). */
SMCSIM_API smc_status smc_run_record(const smc_run* run, size_t index, double* row);
SMCSIM_API smc_status smc_run_write_csv(const smc_run* run, const char* path);
SMCSIM_API smc_status smc_run_metrics_json(const smc_run* run, char* buffer, size_t capacity, size_t* required);
SMCSIM_API smc_status smc_run_write_metrics(const smc_run* run, const char* path);

/* Per-joint summary values. `out` receives two doubles. */
SMCSIM_API smc_status smc_run_chattering_index(const smc_run* run, double* out);
SMCSIM_API smc_status smc_run_rmse(const smc_run* run, double* out);
SMCSIM_API smc_status smc_run_lyapunov_violation_rate(const smc_run* run, double* out);

/* --- comparisons ------------------------------------------------------------ */

/* Runs each named controller on the scenario. Needs >= 2 distinct names. */
SMCSIM_API smc_status smc_compare(const smc_scenario* scenario, const char* const* controllers, size_t count,
                                  smc_comparison** out);
SMCSIM_API void smc_comparison_free(smc_comparison* comparison);

SMCSIM_API size_t smc_comparison_size(const smc_comparison* comparison);
/* Borrowed view of member run `index`, valid until the comparison is freed. */
SMCSIM_API const smc_run* smc_comparison_run(const smc_comparison* comparison, size_t index);
SMCSIM_API const char* smc_comparison_label(const smc_comparison* comparison, size_t index);

/* Writes <prefix>_<controller>_log.csv for every member and comparison.json
 * into `directory`, which must exist. */
SMCSIM_API smc_status smc_comparison_write(const smc_comparison* comparison, const char* directory,
                                           const char* prefix);
SMCSIM_API smc_status smc_comparison_json(const smc_comparison* comparison, char* buffer, size_t capacity,
                                          size_t* required);

#ifdef __cplusplus
}
#endif

#endif /* SMCSIM_SMCSIM_H */
