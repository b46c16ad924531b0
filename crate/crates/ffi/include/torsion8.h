#ifndef TORSION8_H
#define TORSION8_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stdint.h>

/*
 Default relative tolerance.
 */
#define T8_DEFAULT_TOLERANCE 1e-9

typedef enum T8Branch {
  T8_BRANCH_PLUS = 0,
  T8_BRANCH_MINUS = 1,
} T8Branch;

/*
 Status codes returned by every fallible call.
 */
typedef enum T8Status {
  T8_STATUS_OK = 0,
  T8_STATUS_VERIFICATION_FAILED = 1,
  T8_STATUS_DEGENERATE_CURVE = 2,
  T8_STATUS_OFF_CURVE = 3,
  T8_STATUS_PARSE_ERROR = 4,
  T8_STATUS_INVALID_BETA = 5,
  T8_STATUS_INCONSISTENT_ADDENDS = 6,
  T8_STATUS_UNSUPPORTED_INDEX = 7,
  T8_STATUS_NULL_POINTER = 8,
  T8_STATUS_PANIC = 9,
} T8Status;

/*
 Opaque curve handle.
 */
typedef struct T8Curve T8Curve;

typedef struct T8Complex {
  double re;
  double im;
} T8Complex;

/*
 A curve point; `x` and `y` are ignored when `is_infinity` is set.
 */
typedef struct T8Point {
  bool is_infinity;
  struct T8Complex x;
  struct T8Complex y;
} T8Point;

/*
 Flattened order-8 verification report. Orders are 0 when none was found.
 */
typedef struct T8Order8Report {
  struct T8Complex beta;
  struct T8Complex gamma;
  struct T8Complex beta1;
  struct T8Complex beta2;
  struct T8Point point;
  /*
   `multiples[k - 1] = k * P` for `k = 1..=8`.
   */
  struct T8Point multiples[8];
  uint32_t verified_order;
  uint32_t oracle_order;
  bool four_p_is_e2;
  bool oracle_confirms;
  bool beta_assumption_met;
} T8Order8Report;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Create a curve `y^2 = 4(x - e1)(x - e2)(x - e3)`. The handle written to
 `out` must be released with `t8_curve_free`.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum T8Status t8_curve_new(struct T8Complex e1,
                           struct T8Complex e2,
                           struct T8Complex e3,
                           struct T8Curve **out);

/*
 Release a curve handle. Null is ignored.

 # Safety
 `curve` must come from `t8_curve_new` and not have been freed already.
 */
void t8_curve_free(struct T8Curve *curve);

/*
 Copy the three roots into `out[0..3]`.

 # Safety
 `curve` must be a live handle; `out` must point to three writable values.
 */
enum T8Status t8_curve_roots(const struct T8Curve *curve, struct T8Complex *out);

/*
 Principal square root (cut on the negative reals, cut mapped upward).
 */
struct T8Complex t8_principal_sqrt(struct T8Complex z);

/*
 # Safety
 `curve` must be a live handle; `beta` and `gamma` must be writable.
 */
enum T8Status t8_beta_gamma(const struct T8Curve *curve,
                            struct T8Complex *beta,
                            struct T8Complex *gamma);

/*
 # Safety
 `curve` must be a live handle; `p` readable; `out` writable.
 */
enum T8Status t8_contains(const struct T8Curve *curve,
                          const struct T8Point *p,
                          double rel,
                          bool *out);

/*
 `y = branch * sqrt(4(x - e1)(x - e2)(x - e3))`.

 # Safety
 `curve` must be a live handle; `out` writable.
 */
enum T8Status t8_lift_x(const struct T8Curve *curve,
                        struct T8Complex x,
                        enum T8Branch branch,
                        struct T8Point *out);

/*
 # Safety
 `curve` must be a live handle; `p`, `q` readable; `out` writable.
 */
enum T8Status t8_add(const struct T8Curve *curve,
                     const struct T8Point *p,
                     const struct T8Point *q,
                     double rel,
                     struct T8Point *out);

/*
 # Safety
 `curve` must be a live handle; `p` readable; `out` writable.
 */
enum T8Status t8_double(const struct T8Curve *curve,
                        const struct T8Point *p,
                        double rel,
                        struct T8Point *out);

/*
 # Safety
 `curve` must be a live handle; `p` readable; `out` writable.
 */
enum T8Status t8_multiply(const struct T8Curve *curve,
                          uint64_t k,
                          const struct T8Point *p,
                          double rel,
                          struct T8Point *out);

/*
 Smallest `n <= max_order` with `n * p` at infinity; writes 0 if none.

 # Safety
 `curve` must be a live handle; `p` readable; `out` writable.
 */
enum T8Status t8_order_of(const struct T8Curve *curve,
                          const struct T8Point *p,
                          uint32_t max_order,
                          double rel,
                          uint32_t *out);

/*
 The constructed point of order 8.

 # Safety
 `curve` must be a live handle; `out` writable.
 */
enum T8Status t8_order8_point(const struct T8Curve *curve,
                              enum T8Branch branch,
                              struct T8Point *out);

/*
 Build and verify the order-8 point. Returns `T8_STATUS_VERIFICATION_FAILED`
 (with the report still written) when the checks do not all pass.

 # Safety
 `curve` must be a live handle; `out` writable.
 */
enum T8Status t8_verify_order8(const struct T8Curve *curve,
                               enum T8Branch branch,
                               double rel,
                               struct T8Order8Report *out);

/*
 JSON report of the worked example on `(i, 0, -i)`, the same text the
 `example` command prints. Release with `t8_string_free`. `exit_code`, if
 not null, receives the command's exit code.

 # Safety
 `exit_code` must be null or writable.
 */
char *t8_example_json(int32_t *exit_code);

/*
 # Safety
 `s` must come from this library and not have been freed already.
 */
void t8_string_free(char *s);

/*
 Message for the last failed call on this thread, or null. Valid until the
 next failing call on the same thread.
 */
const char *t8_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TORSION8_H */
