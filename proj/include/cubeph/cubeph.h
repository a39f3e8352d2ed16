/* C interface to the cubeph library: exact cubical persistent homology,
 * random cubical filtrations and their Monte Carlo limit estimates.
 *
 * Every function that can fail returns a cph_status. On failure the
 * message is available from cph_last_error() until the next call on the
 * same thread. Objects are opaque and released with their _free function;
 * passing NULL to a _free function is a no-op. Handles may be shared
 * across threads for reading only. */
#ifndef CUBEPH_CUBEPH_H
#define CUBEPH_CUBEPH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CUBEPH_BUILDING)
#    define CPH_API __declspec(dllexport)
#  else
#    define CPH_API __declspec(dllimport)
#  endif
#else
#  define CPH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as process exit codes of the command-line tool. */
typedef enum cph_status {
    CPH_OK = 0,
    CPH_SUITE_FAILED = 1,     /* a verify check failed */
    CPH_CONFIG_ERROR = 2,     /* bad configuration or parameter constraint */
    CPH_DATA_ERROR = 3,       /* malformed or non-monotone input data */
    CPH_IO_ERROR = 4,         /* file could not be read or written */
    CPH_INVALID_ARGUMENT = 5, /* bad argument to an API call */
    CPH_INTERNAL_ERROR = 6
} cph_status;

typedef struct cph_config cph_config;
typedef struct cph_filtration cph_filtration;
typedef struct cph_diagram cph_diagram;

/* Library version, e.g. "1.0.0". */
CPH_API const char* cph_version(void);
/* Version of the JSON config schema this build reads. */
CPH_API int cph_schema_version(void);
/* Version of the filtration and diagram text formats. */
CPH_API int cph_format_version(void);

/* Message of the last failure on this thread; "" if none. */
CPH_API const char* cph_last_error(void);
/* Text summary produced by the last cph_run_* call on this thread. */
CPH_API const char* cph_last_output(void);

/* ---- configuration (JSON, see README) */

CPH_API cph_status cph_config_load(const char* path, cph_config** out);
CPH_API cph_status cph_config_parse(const char* json_text, cph_config** out);
/* Output directory named in the config, or "" when absent. */
CPH_API const char* cph_config_out_dir(const cph_config* config);
CPH_API void cph_config_free(cph_config* config);

/* ---- filtrations */

/* Empty filtration (every cube never born) on the window [-n, n]^dim. */
CPH_API cph_status cph_filtration_create(int dim, int n, cph_filtration** out);
/* The configured model on [-n, n]^d for one trial of the config's seed. */
CPH_API cph_status cph_filtration_sample(const cph_config* config, int n, uint64_t trial, cph_filtration** out);
CPH_API cph_status cph_filtration_read(const char* path, cph_filtration** out);
CPH_API cph_status cph_filtration_write(const cph_filtration* f, const char* path);
CPH_API int cph_filtration_dim(const cph_filtration* f);
/* Cubes use the text form "d;b1,...,bd;bits", e.g. "2;0,0;10" for [0,1]x{0}.
 * A birth of INFINITY means never born. */
CPH_API cph_status cph_filtration_set_birth(cph_filtration* f, const char* cube, double birth);
CPH_API cph_status cph_filtration_get_birth(const cph_filtration* f, const char* cube, double* birth);
/* CPH_DATA_ERROR naming the first face whose birth exceeds its coface's. */
CPH_API cph_status cph_filtration_validate(const cph_filtration* f);
/* Rank of H_q(X(s)) -> H_q(X(t)), computed without the diagram. */
CPH_API cph_status cph_persistent_betti(const cph_filtration* f, int q, double s, double t, int64_t* out);
CPH_API void cph_filtration_free(cph_filtration* f);

/* ---- persistence diagrams */

CPH_API cph_status cph_diagram_compute(const cph_filtration* f, cph_diagram** out);
CPH_API cph_status cph_diagram_read(const char* path, cph_diagram** out);
CPH_API cph_status cph_diagram_write(const cph_diagram* d, const char* path);
CPH_API int cph_diagram_max_degree(const cph_diagram* d);
CPH_API size_t cph_diagram_size(const cph_diagram* d, int q);
/* Pairs of degree q are sorted by (birth, death); death may be INFINITY. */
CPH_API cph_status cph_diagram_pair(const cph_diagram* d, int q, size_t index, double* birth, double* death);
/* Pairs with birth <= s and death > t. */
CPH_API cph_status cph_quadrant_mass(const cph_diagram* d, int q, double s, double t, int64_t* out);
CPH_API void cph_diagram_free(cph_diagram* d);

/* ---- commands; out_dir NULL means the config's "out", else "." */

CPH_API cph_status cph_run_sample(const cph_config* config, const char* out_dir, int jobs);
CPH_API cph_status cph_run_diagram(const cph_config* config, const char* out_dir, int jobs);
/* Diagram of one filtration dump; output NULL writes next to the input
 * with a .diagram.txt suffix. */
CPH_API cph_status cph_run_diagram_file(const char* input_path, const char* output_path);
/* which: "pb", "diagram", "mgf" or "rate". */
CPH_API cph_status cph_run_estimate(const cph_config* config, const char* which, const char* out_dir, int jobs);
/* scale: "smoke", "default" or "deep". Each of the optional filtration dumps
 * is validated first; a broken one yields CPH_DATA_ERROR. */
CPH_API cph_status cph_run_verify(const char* scale, const char* out_dir, int jobs, const char* const* inputs,
                                  size_t input_count);

#ifdef __cplusplus
}
#endif

#endif /* CUBEPH_CUBEPH_H */
