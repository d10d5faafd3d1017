#ifndef HINGES_H
#define HINGES_H

/* C interface to the hinge library.  Handles are opaque; every function
 * returns HNG_OK or an error code, with the message kept per thread in
 * hng_last_error().  Strings returned through char** are owned by the caller
 * and released with hng_string_free(). */

#ifdef __cplusplus
extern "C" {
#endif

#ifdef __GNUC__
#define HNG_API __attribute__((visibility("default")))
#else
#define HNG_API
#endif

#define HNG_OK 0
#define HNG_ERROR_DOMAIN 1
#define HNG_ERROR_USAGE 2
#define HNG_ERROR_INTERNAL 3

typedef struct hng_relation hng_relation;
typedef struct hng_hinge hng_hinge;
typedef struct hng_sample hng_sample;
typedef struct hng_scene hng_scene;

/* Scaling-grid description: log-spaced moduli crossed with unit phases
 * (ignored over the reals; positive_only drops the negative ray). */
typedef struct {
  double modulus_min;
  double modulus_max;
  int moduli;
  int phases;
  int positive_only;
} hng_grid;

HNG_API const char* hng_version(void);
HNG_API const char* hng_last_error(void);
HNG_API void hng_string_free(char* s);
HNG_API hng_grid hng_grid_default(void);

/* Relations (JSON: {"n", "field", "frame"}). */
HNG_API int hng_relation_parse(const char* json, double rank_tol, hng_relation** out);
HNG_API int hng_relation_to_json(const hng_relation* v, char** out_json);
HNG_API void hng_relation_free(hng_relation* v);

/* Kernel/image/domain/indeterminacy dimensions, the induced operator matrix
 * and the fixed-point flag, as one JSON document. */
HNG_API int hng_relation_invariants(const hng_relation* v, double tol, double rank_tol, char** out_json);
HNG_API int hng_relation_scale(const hng_relation* v, double re, double im, hng_relation** out);
HNG_API int hng_relation_gap(const hng_relation* a, const hng_relation* b, double* out);
HNG_API int hng_relation_equal_mod_scale(const hng_relation* a, const hng_relation* b, double tol,
                                 double rank_tol, int* out);
HNG_API int hng_orbit_sample(const hng_relation* v, const hng_grid* grid, double rank_tol,
                     hng_sample** out);

/* Hinges (JSON: {"n", "field", "k", "P", "Q"}). */
HNG_API int hng_hinge_parse(const char* json, double rank_tol, hng_hinge** out);
HNG_API int hng_hinge_to_json(const hng_hinge* h, char** out_json);
HNG_API void hng_hinge_free(hng_hinge* h);
HNG_API int hng_hinge_validate(const hng_hinge* h, double tol, double rank_tol, char** report_json);
HNG_API int hng_hinge_validate_pd(const hng_hinge* h, double tol, char** report_json);
HNG_API int hng_hinge_of_matrix(const char* matrix_json, const char* field, double rank_tol,
                        hng_hinge** out);

/* Limit hinge of t -> left * diag(t^exponents) * right; the conjugator JSON
 * arguments may be NULL for the identity. */
HNG_API int hng_hinge_limit_diag(const char* field, int n, const double* exponents, const double* probes,
                         int probe_count, const char* left_json, const char* right_json,
                         double tol, double rank_tol, hng_hinge** out);

/* Limit hinge of a family given by one matrix JSON per probe. */
HNG_API int hng_hinge_limit_samples(const char* field, const char* const* matrix_jsons, int count,
                            const double* probes, double tol, double rank_tol, hng_hinge** out);

HNG_API int hng_hinge_sample(const hng_hinge* h, const hng_grid* grid, double rank_tol, hng_sample** out);
HNG_API int hng_hinge_extract(const hng_sample* s, double tol, double rank_tol, hng_hinge** out);

/* Boundary hinge of the positive definite family
 * t -> conj^T * diag(t^exponents) * conj (conjugator NULL for the identity). */
HNG_API int hng_pd_boundary_diag(int n, const double* exponents, const char* conjugator_json,
                         const double* probes, int probe_count, double tol, double rank_tol,
                         hng_hinge** out);

/* Hausdorff limit of the orbit-closure samples of graphs given per probe. */
HNG_API int hng_limit_of_orbit_closures(const char* field, const char* const* matrix_jsons, int count,
                                const hng_grid* grid, double tol, double rank_tol,
                                hng_sample** out);

/* Closed-set samples (JSON: {"space", "resolution", "points"}). */
HNG_API int hng_sample_parse(const char* json, double rank_tol, hng_sample** out);
HNG_API int hng_sample_to_json(const hng_sample* s, char** out_json);
HNG_API void hng_sample_free(hng_sample* s);
HNG_API int hng_hausdorff(const hng_sample* a, const hng_sample* b, double* out);

/* Quotient scenes (JSON: {"points", "labels", "chart", "metric", ...}). */
HNG_API int hng_scene_parse(const char* json, double rank_tol, hng_scene** out);
HNG_API void hng_scene_free(hng_scene* s);

/* Separated-quotient members plus, when the label alphabet is small enough to
 * enumerate, the admissible label sets; eps < 0 means the scene resolution. */
HNG_API int hng_quotient_run(const hng_scene* s, double tol, double eps, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* HINGES_H */
