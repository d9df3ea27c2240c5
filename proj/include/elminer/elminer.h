/* elminer: mines OWL 2 EL class descriptions from SPARQL endpoints.
 *
 * All strings are UTF-8. Strings returned through `char**` out-parameters are owned by the
 * caller and released with elm_string_free. On failure a function returns a non-zero
 * elm_status and elm_last_error() describes it; the message belongs to the calling thread
 * and stays valid until that thread's next call into the library.
 */
#ifndef ELMINER_H
#define ELMINER_H

#include <stddef.h>

#if defined(_WIN32)
#define ELM_API __declspec(dllexport)
#else
#define ELM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum elm_status {
  ELM_OK = 0,
  ELM_ERR_INVALID_ARGUMENT = 1,
  ELM_ERR_PARSE = 2,
  ELM_ERR_FETCH = 3, /* the job could not retrieve data and produced nothing */
  ELM_ERR_IO = 4,
  ELM_ERR_STATE = 5, /* call not valid in the handle's current state */
  ELM_ERR_INTERNAL = 99
} elm_status;

ELM_API const char* elm_version(void);
ELM_API const char* elm_last_error(void);
ELM_API void elm_string_free(char* s);

/* ---- mining jobs ------------------------------------------------------------------------ */

typedef struct elm_job elm_job;

/* `config_json` uses the same keys as the service's POST /jobs body. */
ELM_API elm_status elm_job_create(const char* config_json, elm_job** out);
ELM_API void elm_job_free(elm_job* job);

/* Optional ontology of accepted axioms; patterns it already entails are not reported. */
ELM_API elm_status elm_job_set_ontology(elm_job* job, const char* path);

/* Receives each result record as a JSON object while the job runs. */
typedef void (*elm_result_fn)(const char* record_json, void* user);

/* Runs to completion, cancellation or failure. A cancelled or truncated run still returns
 * ELM_OK; check "partial" in the outcome. ELM_ERR_FETCH means nothing could be mined because
 * the data source failed. A job runs once. */
ELM_API elm_status elm_job_run(elm_job* job, elm_result_fn on_result, void* user);

/* Async-signal-safe; may be called from any thread or a signal handler. */
ELM_API void elm_job_cancel(elm_job* job);

/* Outcome of a finished run as JSON: partial, stopReason, queries, targetSize, warnings,
 * streamed and closed result lists. */
ELM_API elm_status elm_job_outcome(const elm_job* job, char** out_json);

/* Closed result set of a finished run as "manchester", "shacl-turtle" or "json". */
ELM_API elm_status elm_job_export(const elm_job* job, const char* format, char** out);

/* ---- patterns --------------------------------------------------------------------------- */

/* Parses Manchester-syntax text and returns its canonical form. `prefixes_json` maps prefix
 * names to namespaces and may be NULL. */
ELM_API elm_status elm_pattern_canonicalize(const char* text, const char* prefixes_json, char** out);

/* SHACL shapes graph (Turtle) for one pattern. */
ELM_API elm_status elm_pattern_to_shacl(const char* text, const char* prefixes_json, char** out);

/* ---- local SPARQL endpoint over a Turtle file ------------------------------------------- */

typedef struct elm_fixture elm_fixture;

ELM_API elm_status elm_fixture_start(const char* turtle_path, elm_fixture** out);
/* Valid until elm_fixture_stop. */
ELM_API const char* elm_fixture_url(const elm_fixture* fixture);
ELM_API long elm_fixture_query_count(const elm_fixture* fixture);
ELM_API void elm_fixture_stop(elm_fixture* fixture);

/* ---- HTTP service ----------------------------------------------------------------------- */

typedef struct elm_service elm_service;

/* Keys: dataDir, host, port (0 picks a free one), jobConcurrency, ontologyFile, uiDir. */
ELM_API elm_status elm_service_start(const char* config_json, elm_service** out);
ELM_API int elm_service_port(const elm_service* service);
ELM_API void elm_service_stop(elm_service* service);

#ifdef __cplusplus
}
#endif

#endif
