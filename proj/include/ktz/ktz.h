/* C interface to the ktz layered tornado model. */
#ifndef KTZ_KTZ_H
#define KTZ_KTZ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define KTZ_API __attribute__((visibility("default")))
#else
#define KTZ_API
#endif

typedef enum ktz_status {
  KTZ_OK = 0,
  KTZ_ERR_INVALID_ARGUMENT = 1,
  KTZ_ERR_CONFIG = 2,
  KTZ_ERR_IO = 3,
  KTZ_ERR_FORMAT = 4,
  KTZ_ERR_STEP_UNSTABLE = 5,
  KTZ_ERR_NON_PERIODIC_GRID = 6,
  KTZ_ERR_SINGULAR_LOOP = 7,
  KTZ_ERR_EMPTY_ZONE = 8,
  KTZ_ERR_AMBIGUOUS_CORE = 9,
  KTZ_ERR_NO_PLATEAU = 10,
  KTZ_ERR_SOLVER_FAIL = 11,
  KTZ_ERR_NO_DEPRESSION = 12,
  KTZ_ERR_INTERNAL = 13
} ktz_status;

typedef enum ktz_run_status {
  KTZ_RUN_COMPLETED = 0,
  KTZ_RUN_BLOWUP = 1,
  KTZ_RUN_DIVERGED = 2
} ktz_run_status;

typedef struct ktz_config ktz_config;
typedef struct ktz_field ktz_field;

/* Message of the last failing call on this thread, "" if none. */
KTZ_API const char* ktz_last_error_message(void);
KTZ_API const char* ktz_status_name(ktz_status status);
KTZ_API const char* ktz_run_status_name(ktz_run_status status);

/* Strings returned through char** are owned by the caller. */
KTZ_API void ktz_string_free(char* s);

KTZ_API ktz_status ktz_config_load(const char* path, ktz_config** out);
KTZ_API ktz_status ktz_config_parse(const char* text, ktz_config** out);
KTZ_API void ktz_config_free(ktz_config* cfg);
KTZ_API ktz_status ktz_config_set_seed(ktz_config* cfg, uint64_t seed);
KTZ_API ktz_status ktz_config_set_threads(ktz_config* cfg, int threads);
KTZ_API ktz_status ktz_config_set_snapshot_every(ktz_config* cfg, double every);
/* Output directory from the [output] section, or NULL when unset. */
KTZ_API const char* ktz_config_output_dir(const ktz_config* cfg);

KTZ_API ktz_status ktz_classify(const ktz_config* cfg, char** text);

/* Runs one layer and writes its files to out_dir. */
KTZ_API ktz_status ktz_run(const ktz_config* cfg, const char* out_dir,
                           ktz_run_status* run_status);

/* Runs the layer stack. diverged receives the number of Diverged layers;
   column, when not NULL, receives the column table text. */
KTZ_API ktz_status ktz_stack(const ktz_config* cfg, const char* out_dir,
                             size_t* diverged, char** column);

/* Re-analyses every snapshot in in_dir; report gets the latest report. */
KTZ_API ktz_status ktz_analyze(const ktz_config* cfg, const char* in_dir,
                               const char* out_dir, char** report);

KTZ_API ktz_status ktz_render(const ktz_config* cfg, const char* in_dir,
                              const char* out_dir, size_t* images);

KTZ_API ktz_status ktz_field_read(const char* path, ktz_field** out);
KTZ_API ktz_status ktz_field_write(const ktz_field* field, const char* path);
KTZ_API void ktz_field_free(ktz_field* field);
KTZ_API int ktz_field_n(const ktz_field* field);
KTZ_API double ktz_field_time(const ktz_field* field);
KTZ_API double ktz_field_max_amplitude(const ktz_field* field);
KTZ_API ktz_status ktz_field_measure_charge(const ktz_field* field,
                                            double loop_radius, int* charge);

#ifdef __cplusplus
}
#endif

#endif
