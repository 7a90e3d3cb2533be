/*
 * rq — Riemannian quantization toolkit, C API.
 *
 * Opaque-handle interface over the C++ core, suitable for dlopen or for
 * binding from other languages. Every function that can fail returns a
 * status code; rq_last_error() describes the most recent failure on the
 * calling thread. Handles are freed with the matching *_free function.
 */

#ifndef RQ_H
#define RQ_H

#include <stdint.h>

#if defined(_WIN32)
#define RQ_API __declspec(dllexport)
#else
#define RQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes (also the CLI exit codes for 0/1/2). */
#define RQ_OK 0
#define RQ_ERR_COMPUTE 1  /* computation failed (numeric/symbolic/domain)   */
#define RQ_ERR_MANIFEST 2 /* manifest missing, malformed, or invalid        */
#define RQ_ERR_ARGUMENT 3 /* null pointer or invalid argument               */

typedef struct rq_manifest rq_manifest;
typedef struct rq_options rq_options;
typedef struct rq_report rq_report;

RQ_API const char* rq_version(void);

/* Message for the last failing call on this thread (empty if none). */
RQ_API const char* rq_last_error(void);

/* Manifest lifecycle. */
RQ_API int rq_manifest_load(const char* path, rq_manifest** out_manifest);
RQ_API int rq_manifest_parse(const char* json_text, rq_manifest** out_manifest);
RQ_API void rq_manifest_free(rq_manifest* manifest);

/* Command options (all optional; see README for per-command meaning). */
RQ_API rq_options* rq_options_new(void);
RQ_API void rq_options_free(rq_options* options);
RQ_API int rq_options_set_seed(rq_options* options, uint64_t seed);
RQ_API int rq_options_set_order(rq_options* options, int order);
RQ_API int rq_options_set_count(rq_options* options, int count);
RQ_API int rq_options_set_tensor(rq_options* options, const char* name);
RQ_API int rq_options_set_tensor2(rq_options* options, const char* name);
RQ_API int rq_options_set_field(rq_options* options, const char* name);

/*
 * Run one command (christoffel, expmap, quantize, laplace-check, commutator,
 * defect, poisson, fourier-check, spectrum, wave-check, hj-check) against a
 * manifest. `options` may be NULL for defaults.
 */
RQ_API int rq_run(const rq_manifest* manifest, const char* command, const rq_options* options,
                  rq_report** out_report);

/* Report accessors; the returned strings live as long as the report. */
RQ_API const char* rq_report_text(const rq_report* report);
RQ_API const char* rq_report_json(const rq_report* report);
/* 1 if every check in the report passed, 0 otherwise. */
RQ_API int rq_report_checks_passed(const rq_report* report);
RQ_API void rq_report_free(rq_report* report);

#ifdef __cplusplus
}
#endif

#endif /* RQ_H */
