#ifndef LUNE_HANKEL_H
#define LUNE_HANKEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LhBinaryOp {
  LH_BINARY_OP_ADD = 0,
  LH_BINARY_OP_SUB = 1,
  LH_BINARY_OP_MUL = 2,
  LH_BINARY_OP_DIV = 3,
  LH_BINARY_OP_COMPOSE = 4,
} LhBinaryOp;

typedef enum LhClass {
  LH_CLASS_STARLIKE = 0,
  LH_CLASS_CONVEX = 1,
} LhClass;

typedef enum LhFunction {
  LH_FUNCTION_G = 0,
  LH_FUNCTION_H0 = 1,
  LH_FUNCTION_H = 2,
  LH_FUNCTION_Q = 3,
  LH_FUNCTION_KOEBE = 4,
  LH_FUNCTION_CONVEX_BOUNDARY = 5,
} LhFunction;

typedef enum LhStatus {
  LH_STATUS_OK = 0,
  LH_STATUS_NULL_POINTER = 1,
  LH_STATUS_INVALID_INPUT = 2,
  LH_STATUS_UNSUPPORTED = 3,
  LH_STATUS_PANIC = 4,
} LhStatus;

typedef enum LhUnaryOp {
  LH_UNARY_OP_EXP = 0,
  LH_UNARY_OP_LOG = 1,
  LH_UNARY_OP_SQRT = 2,
  LH_UNARY_OP_INTEGRATE_QUOTIENT = 3,
  LH_UNARY_OP_DERIVATIVE = 4,
} LhUnaryOp;

// Opaque truncated power series.
typedef struct LhSeries LhSeries;

typedef struct LhComplex {
  double re;
  double im;
} LhComplex;

typedef struct LhSearchResult {
  double sup_found;
  double tau1;
  struct LhComplex tau2;
  struct LhComplex tau3;
  double theoretical_bound;
  double gap;
  bool within_bound;
  size_t evaluations;
} LhSearchResult;

typedef struct LhMembershipResult {
  bool passed;
  double worst_margin;
  struct LhComplex worst_location;
  double confidence_radius;
  bool reduced_confidence;
} LhMembershipResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *lh_last_error(void);

// Builds a series of the given order from `len` coefficients (missing ones are zero).
//
// # Safety
// `coeffs` must point to `len` readable values (it may be null when `len` is 0).
enum LhStatus lh_series_new(const struct LhComplex *coeffs,
                            size_t len,
                            size_t order,
                            struct LhSeries **out);

// # Safety
// `s` must be null or a handle returned by this library and not yet freed.
void lh_series_free(struct LhSeries *s);

// # Safety
// `s` must be a live handle; `out` must be writable.
enum LhStatus lh_series_order(const struct LhSeries *s, size_t *out);

// Coefficient `k`; `INVALID_INPUT` when `k` exceeds the order.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum LhStatus lh_series_coeff(const struct LhSeries *s, size_t k, struct LhComplex *out);

// Evaluates inside the open unit disk.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum LhStatus lh_series_eval(const struct LhSeries *s, struct LhComplex z, struct LhComplex *out);

// `a op b` as a new handle. `COMPOSE` computes `a ∘ b` and needs `b(0) = 0`.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum LhStatus lh_series_binary(enum LhBinaryOp op,
                               const struct LhSeries *a,
                               const struct LhSeries *b,
                               struct LhSeries **out);

// # Safety
// `a` must be a live handle; `out` must be writable.
enum LhStatus lh_series_unary(enum LhUnaryOp op, const struct LhSeries *a, struct LhSeries **out);

// One of the named functions, truncated at `order`.
//
// # Safety
// `out` must be writable.
enum LhStatus lh_function(enum LhFunction f, size_t order, struct LhSeries **out);

// `γ₁, γ₂, γ₃` of a normalized `f`, written to `out[0..3]`.
//
// # Safety
// `f` must be a live handle; `out` must have room for 3 values.
enum LhStatus lh_log_coeffs(const struct LhSeries *f, struct LhComplex *out);

// `γ₁γ₃ − γ₂²` of a normalized `f` (order at least 6).
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum LhStatus lh_h21(const struct LhSeries *f, struct LhComplex *out);

// `H₂,₁` at a Carathéodory parameter point.
//
// # Safety
// `out` must be writable.
enum LhStatus lh_h21_from_tau(enum LhClass class_,
                              double tau1,
                              struct LhComplex tau2,
                              struct LhComplex tau3,
                              struct LhComplex *out);

// Closed-form `Y(A, B, C)`; `branch` receives the branch index 0..=6.
//
// # Safety
// `value` and `branch` must be writable.
enum LhStatus lh_y_closed(double a, double b, double c, double *value, uint32_t *branch);

// Brute-force disk maximum; both step counts must be at least 64.
//
// # Safety
// `out` must be writable.
enum LhStatus lh_y_oracle(double a,
                          double b,
                          double c,
                          size_t radial_steps,
                          size_t angular_steps,
                          double *out);

// Global search over the full parameter domain.
//
// # Safety
// `out` must be writable.
enum LhStatus lh_global_search(enum LhClass class_,
                               size_t tau1_steps,
                               size_t tau2_radial,
                               size_t tau2_angular,
                               size_t refine_depth,
                               struct LhSearchResult *out);

// Sampled lune membership on `n_radii` circles.
//
// # Safety
// `f` must be a live handle, `radii` must point to `n_radii` values and
// `out` must be writable.
enum LhStatus lh_membership(const struct LhSeries *f,
                            enum LhClass class_,
                            const double *radii,
                            size_t n_radii,
                            size_t samples_per_circle,
                            double tol,
                            struct LhMembershipResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LUNE_HANKEL_H */
