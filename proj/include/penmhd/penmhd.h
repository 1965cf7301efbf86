/* C interface to the penalized-MHD simulation engine.
 *
 * Opaque handles + status codes; every string handed out by the library is
 * heap-allocated and must be released with penmhd_string_free. The status
 * values deliberately mirror the CLI exit-code convention, so a thin client
 * can return them unchanged.
 */
#ifndef PENMHD_H
#define PENMHD_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum penmhd_status {
  PENMHD_OK = 0,
  PENMHD_ERR_CONFIG = 1, /* configuration / usage problem */
  PENMHD_ERR_NUMERIC = 2 /* numerical failure while running */
} penmhd_status;

typedef struct penmhd_config penmhd_config;

/* Static version string; do not free. */
const char* penmhd_version(void);

/* Parse and validate a configuration file, applying "key=value" overrides
 * in order after the file contents. On success *out receives a handle
 * (release with penmhd_config_free). On failure *out is NULL and *error
 * (when error is non-NULL) receives a message naming the offending key or
 * file; release it with penmhd_string_free. */
penmhd_status penmhd_config_load(const char* path, const char* const* overrides,
                                 size_t n_overrides, penmhd_config** out, char** error);

/* Same, but from an in-memory configuration string. */
penmhd_status penmhd_config_parse(const char* text, const char* const* overrides,
                                  size_t n_overrides, penmhd_config** out, char** error);

void penmhd_config_free(penmhd_config* cfg);

/* Effective (fully-resolved) value of one configuration key, as written into
 * output-file echoes. Returns NULL for unknown keys; release the returned
 * string with penmhd_string_free. */
char* penmhd_config_get(const penmhd_config* cfg, const char* key);

/* Execute one verb: "run", "sweep", "verify-operators", "verify-convergence",
 * or "certify". Output files are written into outdir (created if needed).
 * *report (when report is non-NULL) receives the human-readable summary for
 * every status, including failures; release it with penmhd_string_free. */
penmhd_status penmhd_execute(const penmhd_config* cfg, const char* verb, const char* outdir,
                             char** report);

void penmhd_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* PENMHD_H */
