#ifndef GSLAB_GSLAB_H
#define GSLAB_GSLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(GSLAB_BUILDING_LIBRARY)
#define GSLAB_API __attribute__((visibility("default")))
#else
#define GSLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gslab_status {
  GSLAB_OK = 0,
  GSLAB_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown name, bad degree */
  GSLAB_ERR_PARSE = 2,            /* expression does not follow the grammar */
  GSLAB_ERR_PARAMETER = 3,        /* inadmissible a, b, c, p */
  GSLAB_ERR_CONFIG = 4,           /* malformed run configuration */
  GSLAB_ERR_PRECONDITION = 5,
  GSLAB_ERR_IO = 6,
  GSLAB_ERR_INTERNAL = 7
} gslab_status;

/* Opaque handles. */
typedef struct gslab_expr gslab_expr;
typedef struct gslab_system gslab_system;

GSLAB_API const char* gslab_version(void);

/* Message of the last failing call on this thread; never null. */
GSLAB_API const char* gslab_last_error(void);

/* Frees strings returned through char** out-parameters. */
GSLAB_API void gslab_string_free(char* s);

/* Expressions. */
GSLAB_API gslab_status gslab_expr_parse(const char* text, gslab_expr** out);
GSLAB_API void gslab_expr_free(gslab_expr* e);
GSLAB_API gslab_status gslab_expr_to_string(const gslab_expr* e, char** out);
GSLAB_API gslab_status gslab_expr_equal(const gslab_expr* a, const gslab_expr* b, int* out);
/* direction is 't' or 'x'. */
GSLAB_API gslab_status gslab_expr_total_derivative(const gslab_expr* e, char direction, gslab_expr** out);
/* Formal partial derivative by a symbol or coordinate name ("u", "u_x", "t"). */
GSLAB_API gslab_status gslab_expr_partial_derivative(const gslab_expr* e, const char* symbol, gslab_expr** out);
/* dependent is "u", "v", "ubar" or "vbar". */
GSLAB_API gslab_status gslab_expr_euler(const gslab_expr* e, const char* dependent, gslab_expr** out);

/* Systems. Parameters are rationals ("1", "-3/2", "0.5"); p a positive integer. */
GSLAB_API gslab_status gslab_system_gardner(const char* a, const char* b, const char* c, const char* p,
                                            gslab_system** out);
/* u_t + D_x r + c u_xxx = 0, v_t + D_x s + c v_xxx = 0 with r, s in u and v. */
GSLAB_API gslab_status gslab_system_general(const char* r, const char* s, const char* c, gslab_system** out);
GSLAB_API void gslab_system_free(gslab_system* sys);
/* which is 1 or 2. */
GSLAB_API gslab_status gslab_system_equation(const gslab_system* sys, int which, gslab_expr** out);
/* Rewrites every t-derivative of u and v using the system. */
GSLAB_API gslab_status gslab_system_reduce(const gslab_system* sys, const gslab_expr* e, gslab_expr** out);

/*
 * Commands. Each writes a JSON report to *report_json (free with
 * gslab_string_free) and sets *passed to 1 when every check passed. A
 * non-OK status means no report was produced.
 *
 * Generators are names (X1, Y1, X2, X3, X4, Y4, X5) or "T=..,X=..,U=..,V=..";
 * substitutions are names ("i.c3", "ii.c1", ...) or "phi=..,psi=..".
 */
GSLAB_API gslab_status gslab_classify_symmetries(const gslab_system* sys, unsigned degree, int expect_table,
                                                 char** report_json, int* passed);
GSLAB_API gslab_status gslab_classify_substitutions(const gslab_system* sys, unsigned degree, int expect_table,
                                                    char** report_json, int* passed);
GSLAB_API gslab_status gslab_verify_symmetry(const gslab_system* sys, const char* generator, char** report_json,
                                             int* passed);
/* substitution may be null. */
GSLAB_API gslab_status gslab_adjoint(const gslab_system* sys, const char* substitution, char** report_json,
                                     int* passed);
GSLAB_API gslab_status gslab_conserved(const gslab_system* sys, const char* generator, const char* substitution,
                                       char** report_json, int* passed);
GSLAB_API gslab_status gslab_check_divergence(const gslab_system* sys, const char* ct, const char* cx,
                                              char** report_json, int* passed);
/* Runs a configuration given as text; the series goes to csv_path unless null. */
GSLAB_API gslab_status gslab_simulate(const char* config_text, const char* csv_path, char** report_json,
                                      int* passed);
/* Seed from the GSL_SEED environment variable, or the built-in default. */
GSLAB_API uint64_t gslab_seed_from_env(void);
/* jobs = 0 uses every hardware thread. */
GSLAB_API gslab_status gslab_reproduce(unsigned jobs, uint64_t seed, char** report_json, int* passed);

#ifdef __cplusplus
}
#endif

#endif
