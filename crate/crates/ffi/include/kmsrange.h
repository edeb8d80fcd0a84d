#ifndef KMSRANGE_H
#define KMSRANGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum KmsStatus {
  KMS_STATUS_OK = 0,
  KMS_STATUS_NULL_POINTER = 1,
  KMS_STATUS_INVALID_ARGUMENT = 2,
  KMS_STATUS_BUFFER_TOO_SMALL = 3,
  KMS_STATUS_NOT_CONTAINED = 4,
  KMS_STATUS_NUMERICAL_FAILURE = 5,
  KMS_STATUS_PANIC = 6,
} KmsStatus;

/*
 Opaque square complex matrix.
 */
typedef struct KmsMatrix KmsMatrix;

/*
 Flat boundary piece reported by [`kms_detect_segment`].
 */
typedef struct KmsSegment {
  /*
   Non-zero when a segment was found; the other fields are meaningful only then.
   */
  int32_t present;
  double abscissa;
  double start_re;
  double start_im;
  double end_re;
  double end_im;
  double direction_theta;
  double length;
} KmsSegment;

/*
 Outcome of [`kms_disc_check`].
 */
typedef struct KmsDisc {
  int32_t is_disc;
  double center_re;
  double center_im;
  double radius;
  double support_deviation;
  double radial_deviation;
} KmsDisc;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the most recent failure on this thread, or null. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *kms_last_error_message(void);

/*
 Builds the KMS matrix `J_n(a)` with `a = a_re + i a_im`.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum KmsStatus kms_matrix_new_kms(size_t n, double a_re, double a_im, struct KmsMatrix **out);

/*
 Builds the `n x n` nilpotent Jordan block.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum KmsStatus kms_matrix_new_jordan(size_t n, struct KmsMatrix **out);

/*
 Builds a matrix from row-major real and imaginary parts of length `n * n`.

 # Safety
 `re` and `im` must each point to `n * n` readable doubles and `out` to
 writable storage for one handle.
 */
enum KmsStatus kms_matrix_from_entries(size_t n,
                                       const double *re,
                                       const double *im,
                                       struct KmsMatrix **out);

/*
 `A[j]`: the matrix with row and column `j` (1-based) removed.

 # Safety
 `m` must be a live handle and `out` writable storage for one handle.
 */
enum KmsStatus kms_matrix_principal_submatrix(const struct KmsMatrix *m,
                                              size_t j,
                                              struct KmsMatrix **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `m` must be null or a handle not yet freed.
 */
void kms_matrix_free(struct KmsMatrix *m);

/*
 Dimension of the matrix, or 0 for a null handle.

 # Safety
 `m` must be null or a live handle.
 */
size_t kms_matrix_dim(const struct KmsMatrix *m);

/*
 Support function `h(theta) = lambda_max(Re(e^{-i theta} A))`.

 # Safety
 `m` must be a live handle and `out` writable.
 */
enum KmsStatus kms_support(const struct KmsMatrix *m, double theta, double *out);

/*
 Numerical radius; `theta_out` may be null.

 # Safety
 `m` must be a live handle, `w_out` writable, `theta_out` null or writable.
 */
enum KmsStatus kms_numerical_radius(const struct KmsMatrix *m, double *w_out, double *theta_out);

/*
 Samples `samples` boundary points on a uniform direction grid. Each of
 the four arrays must hold `samples` doubles; `theta` and `support` may be null.

 # Safety
 `m` must be a live handle; non-null arrays must be writable for `samples` doubles.
 */
enum KmsStatus kms_boundary_sample(const struct KmsMatrix *m,
                                   size_t samples,
                                   double *theta,
                                   double *support_values,
                                   double *re,
                                   double *im);

/*
 Looks for a flat piece of the boundary.

 # Safety
 `m` must be a live handle and `out` writable.
 */
enum KmsStatus kms_detect_segment(const struct KmsMatrix *m, struct KmsSegment *out);

/*
 Tests whether the numerical range is a disc.

 # Safety
 `m` must be a live handle and `out` writable.
 */
enum KmsStatus kms_disc_check(const struct KmsMatrix *m, struct KmsDisc *out);

/*
 `min_theta (h_outer - h_inner)` over `samples` directions.

 # Safety
 `inner` and `outer` must be live handles and `out` writable.
 */
enum KmsStatus kms_interior_gap(const struct KmsMatrix *inner,
                                const struct KmsMatrix *outer,
                                size_t samples,
                                double *out);

/*
 Common boundary points of `W(outer)` and `W(inner)`. The count is always
 written to `count`; points are written when `capacity` suffices.

 # Safety
 `outer` and `inner` must be live handles, `count` writable, and `re`,
 `im` writable for `capacity` doubles (they may be null when `capacity` is 0).
 */
enum KmsStatus kms_boundary_touch(const struct KmsMatrix *outer,
                                  const struct KmsMatrix *inner,
                                  size_t samples,
                                  double *re,
                                  double *im,
                                  size_t capacity_points,
                                  size_t *count);

/*
 Number of coefficients of a degree-`n` Kippenhahn polynomial.
 */
size_t kms_kipp_coeff_count(size_t n);

/*
 Coefficients `c_{jk}` of `det(x Re A + y Im A + z I)`, stored at index
 `d (d + 1) / 2 + k` with `d = j + k`.

 # Safety
 `m` must be a live handle and `coeffs` writable for `len` doubles.
 */
enum KmsStatus kms_kipp_coeffs(const struct KmsMatrix *m, double *coeffs, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KMSRANGE_H */
