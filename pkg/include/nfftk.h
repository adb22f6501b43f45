/* nfftk shared-library interface (generated by nfftk.abi; do not edit). */
#ifndef NFFTK_H
#define NFFTK_H

#include <stdint.h>

#define NFFTK_ABI_VERSION "0.1.0"

#define NFFTK_ERR_HANDLE (-1)
#define NFFTK_ERR_SHAPE (-2)
#define NFFTK_ERR_DOMAIN (-3)
#define NFFTK_ERR_INTERNAL (-9)

#ifdef __cplusplus
extern "C" {
#endif

/* Complex buffers are interleaved (re, im) float64 pairs.  Handles are
   opaque positive integers; a handle must not be used from two threads
   at once.  Buffer pointers stay valid until nfftk_destroy. */

/* semantic version of this ABI */
const char * nfftk_abi_version(void);

/* new plan with default parameters; returns handle > 0 or negative error code */
int32_t nfftk_create(const int32_t * bandlimits, int32_t rank, int32_t node_count);

/* new plan with explicit grid, cutoff and flag words */
int32_t nfftk_create_advanced(const int32_t * bandlimits, int32_t rank, int32_t node_count, const int32_t * fft_lengths, int32_t cutoff, uint32_t flags, uint32_t fft_flags);

/* copy node_count*rank coordinates in [-1/2,1/2) and precompute */
int32_t nfftk_set_x(int32_t handle, const double * coords, int64_t len);

/* copy prod(bandlimits) complex coefficients, interleaved re/im */
int32_t nfftk_set_fhat(int32_t handle, const double * values, int64_t len);

/* copy node_count complex samples, interleaved re/im */
int32_t nfftk_set_f(int32_t handle, const double * values, int64_t len);

/* forward transform into the sample buffer */
int32_t nfftk_trafo(int32_t handle);

/* adjoint transform into the coefficient buffer */
int32_t nfftk_adjoint(int32_t handle);

/* pointer to the plan-owned sample buffer (2*node_count doubles); NULL if invalid */
const double * nfftk_get_f(int32_t handle);

/* pointer to the plan-owned coefficient buffer (2*prod(bandlimits) doubles); NULL if invalid */
const double * nfftk_get_fhat(int32_t handle);

/* error code of the last failing call */
int32_t nfftk_last_error(int32_t handle);

/* message for the last failing call; valid until the next call on the handle */
const char * nfftk_last_error_message(int32_t handle);

/* release the plan; exactly one per create */
int32_t nfftk_destroy(int32_t handle);

#ifdef __cplusplus
}
#endif

#endif /* NFFTK_H */
