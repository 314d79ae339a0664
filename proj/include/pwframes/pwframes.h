/* C API of the pwframes shared library.
 *
 * Bandlimited-function synthesis and stable reconstruction from irregular
 * samples on two spectral models: the Fourier line and the Poincare upper
 * half-plane. All objects are opaque handles created and destroyed through
 * this interface; every fallible call returns a pwf_status, and
 * pwf_last_error() describes the most recent failure on the calling thread.
 */

#ifndef PWFRAMES_H
#define PWFRAMES_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PWF_API __declspec(dllexport)
#else
#define PWF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pwf_status {
    PWF_OK = 0,
    PWF_ERR_INVALID_CONFIG = 1,
    PWF_ERR_NOT_CERTIFIED = 2,
    PWF_ERR_INVALID_ARGUMENT = 3,
    PWF_ERR_DOMAIN = 4,
    PWF_ERR_IO = 5,
    PWF_ERR_INTERNAL = 6
} pwf_status;

typedef struct pwf_model pwf_model;
typedef struct pwf_function pwf_function;
typedef struct pwf_lattice pwf_lattice;
typedef struct pwf_family pwf_family;
typedef struct pwf_frame pwf_frame;

/* Message for the last failing call on this thread; empty string if none. */
PWF_API const char* pwf_last_error(void);

/* ---- spectral models ---------------------------------------------- */

/* rule: "midpoint" or "trapezoid". */
PWF_API pwf_status pwf_model_fourier(double omega, int k, const char* rule,
                                     pwf_model** out);
PWF_API pwf_status pwf_model_helgason(double omega, int k_t, int k_phi,
                                      pwf_model** out);
PWF_API int pwf_model_size(const pwf_model* model);
PWF_API void pwf_model_free(pwf_model* model);

/* ---- bandlimited functions ----------------------------------------- */

PWF_API pwf_status pwf_function_random(const pwf_model* model, uint64_t seed,
                                       pwf_function** out);
PWF_API pwf_status pwf_function_create(const pwf_model* model, const double* re,
                                       const double* im, size_t n,
                                       pwf_function** out);
PWF_API pwf_status pwf_function_coeffs(const pwf_function* f, double* re, double* im,
                                       size_t n);
/* y is ignored by line models; half-plane points need y > 0. */
PWF_API pwf_status pwf_function_evaluate(const pwf_function* f, double x, double y,
                                         double* out_re, double* out_im);
PWF_API double pwf_function_norm(const pwf_function* f);
PWF_API void pwf_function_free(pwf_function* f);

/* ---- lattices ------------------------------------------------------ */

/* y_lo/y_hi are ignored by line models. candidate_count = 0 selects a
 * density-derived default. */
PWF_API pwf_status pwf_lattice_build(const pwf_model* model, double x_lo, double x_hi,
                                     double y_lo, double y_hi, double rho,
                                     int candidate_count, uint64_t seed,
                                     pwf_lattice** out);
PWF_API int pwf_lattice_size(const pwf_lattice* lattice);
PWF_API pwf_status pwf_lattice_point(const pwf_lattice* lattice, int index, double* x,
                                     double* y);
PWF_API pwf_status pwf_lattice_certificate(const pwf_lattice* lattice,
                                           double* min_pairwise_distance,
                                           double* covering_radius,
                                           int* multiplicity_bound);
PWF_API pwf_status pwf_lattice_write_csv(const pwf_lattice* lattice,
                                         const pwf_model* model, const char* path);
PWF_API void pwf_lattice_free(pwf_lattice* lattice);

/* ---- sampling functional families ----------------------------------- */

/* kind: "dirac", "weighted_diracs" or "ball_average". masses: the dirac
 * mass, or one entry per sub-point for weighted families. sub_radius = 0
 * selects rho/4. */
PWF_API pwf_status pwf_family_create(const pwf_model* model, const pwf_lattice* lattice,
                                     const char* kind, const double* masses,
                                     size_t mass_count, int sub_count, double sub_radius,
                                     int order_n, double c_phi, double big_c_phi,
                                     uint64_t seed, pwf_family** out);
PWF_API int pwf_family_size(const pwf_family* family);
PWF_API void pwf_family_free(pwf_family* family);

/* ---- frames --------------------------------------------------------- */

/* multiplier: "shifted" for (1+Delta)^n sampling, "pure" for Delta^n
 * (models with spectrum bounded away from zero only). */
PWF_API pwf_status pwf_frame_build(const pwf_family* family, const pwf_model* model,
                                   const char* multiplier, pwf_frame** out);
PWF_API pwf_status pwf_frame_bounds(const pwf_frame* frame, double* lower, double* upper,
                                    int* certified);
PWF_API int pwf_frame_size(const pwf_frame* frame);
/* re/im must hold pwf_frame_size entries. */
PWF_API pwf_status pwf_frame_analysis(const pwf_frame* frame, const pwf_function* f,
                                      double* re, double* im);
/* Solves for the function with the given samples. max_iter = 0 derives the
 * budget from the frame contraction; accelerated != 0 switches from the
 * Neumann/Richardson default to conjugate gradients. */
PWF_API pwf_status pwf_frame_reconstruct(const pwf_frame* frame, const double* sample_re,
                                         const double* sample_im, size_t n, double tol,
                                         int max_iter, int accelerated,
                                         pwf_function** out, int* iterations,
                                         double* final_residual);
PWF_API void pwf_frame_free(pwf_frame* frame);

/* ---- experiment harness --------------------------------------------- */

/* command: "lattice", "reconstruct" or "sweep"; seed_override < 0 keeps the
 * seed from the config file. Returns PWF_ERR_INVALID_CONFIG for config
 * violations and PWF_ERR_NOT_CERTIFIED when a reconstruction frame fails
 * certification (a report is still written). */
PWF_API pwf_status pwf_run(const char* command, const char* config_path,
                           const char* out_dir, int64_t seed_override);

#ifdef __cplusplus
}
#endif

#endif
