#ifndef ZETADYN_H
#define ZETADYN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Fixed-point classification: 0 attracting, 1 indifferent, 2 repelling.
 */
#define ZD_CLASS_ATTRACTING 0

#define ZD_CLASS_INDIFFERENT 1

#define ZD_CLASS_REPELLING 2

/*
 Which map to build from the function: 0 = nu, 1 = relaxed Newton.
 */
enum ZdMapKind
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  Nu = 0,
  Newton = 1,
};
#ifndef __cplusplus
typedef int32_t ZdMapKind;
#endif // __cplusplus

/*
 Status codes returned by every fallible entry point.
 */
enum ZdStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  Ok = 0,
  NullPointer = 1,
  InvalidArgument = 2,
  Pole = 3,
  AccuracyUnreachable = 4,
  NotAFixedPoint = 5,
  QuadratureNonConvergent = 6,
  DomainError = 7,
  BufferTooSmall = 8,
  Internal = 9,
};
#ifndef __cplusplus
typedef int32_t ZdStatus;
#endif // __cplusplus

/*
 Opaque function handle.
 */
typedef struct ZdFunction ZdFunction;

/*
 Complex number as a plain pair.
 */
typedef struct ZdComplex {
  double re;
  double im;
} ZdComplex;

/*
 Value/derivative pair with an absolute error bound on the value.
 */
typedef struct ZdEval {
  struct ZdComplex value;
  struct ZdComplex derivative;
  double abs_error_bound;
} ZdEval;

/*
 One fixed point: location, source (zero/pole of g), order, multiplier,
 holomorphic index (closed form and, when requested, quadrature), class.
 */
typedef struct ZdFixedPointReport {
  struct ZdComplex alpha;
  /*
   0 = zero of g, 1 = pole of g
   */
  int32_t is_pole;
  uint32_t order;
  struct ZdComplex lambda;
  struct ZdComplex iota_closed;
  /*
   meaningful only when has_iota_quad != 0
   */
  struct ZdComplex iota_quad;
  int32_t has_iota_quad;
  /*
   ZD_CLASS_* value
   */
  int32_t classification;
  /*
   |lambda| - 1, signed
   */
  double margin;
} ZdFixedPointReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Last error description for this thread; empty string when no error has
 occurred. The pointer stays valid until the next FFI call on this thread.
 */
const char *zd_last_error_message(void);

/*
 Create a registry function by name: "zeta", "xi", "eta" or "cosh".
 Returns NULL on unknown names.
 */
struct ZdFunction *zd_function_new(const char *name);

/*
 chi(z) = (z - a)^m (z - 1) zeta(z).
 */
struct ZdFunction *zd_function_new_chi(uint32_t m, struct ZdComplex a);

/*
 Rational function from its factorization:
 scale * prod (z - zeros[i])^zero_orders[i] / prod (z - poles[j])^pole_orders[j].
 */
struct ZdFunction *zd_function_new_rational(struct ZdComplex scale,
                                            const struct ZdComplex *zeros,
                                            const uint32_t *zero_orders,
                                            size_t n_zeros,
                                            const struct ZdComplex *poles,
                                            const uint32_t *pole_orders,
                                            size_t n_poles);

/*
 Release a function handle. NULL is a no-op.
 */
void zd_function_free(struct ZdFunction *f);

/*
 Evaluate the function: value, derivative and an absolute error bound.
 */
ZdStatus zd_eval(const struct ZdFunction *f,
                 struct ZdComplex z,
                 double target_abs_err,
                 struct ZdEval *out);

/*
 Apply nu_g or the relaxed Newton map N_{g,kappa} at z.
 */
ZdStatus zd_apply_map(const struct ZdFunction *f,
                      ZdMapKind kind,
                      struct ZdComplex kappa,
                      struct ZdComplex z,
                      struct ZdComplex *out);

/*
 Multiplier, holomorphic index and classification of the fixed point at a
 zero/pole of g. Set with_quadrature to cross-check the closed form with
 the contour integral.
 */
ZdStatus zd_fixed_point_report(const struct ZdFunction *f,
                               ZdMapKind kind,
                               struct ZdComplex kappa,
                               struct ZdComplex alpha,
                               int32_t with_quadrature,
                               struct ZdFixedPointReport *out);

/*
 Hardy Z(t).
 */
ZdStatus zd_hardy_z(double t, double *out);

/*
 Critical-line zeros with ordinates in [t_lo, t_hi], refined to
 target_digits. Writes up to `cap` ordinates and the total count found.
 */
ZdStatus zd_find_zeros(double t_lo,
                       double t_hi,
                       uint32_t target_digits,
                       double *gammas,
                       size_t cap,
                       size_t *n_out);

/*
 Rotation number theta = (1/pi) arctan(1/(2 gamma)) of the fixed point at
 1/2 + i gamma.
 */
ZdStatus zd_gamma_to_theta(double gamma, double *out);

/*
 Certified continued fraction of the rotation number of zero n, computed at
 `digits` working decimal digits (>= 17). Writes up to `cap` quotients; the
 first `*certified_out` of them are certified against input error.
 */
ZdStatus zd_cfrac_row(uint32_t n,
                      uint32_t digits,
                      size_t max_terms,
                      uint64_t *quotients,
                      size_t cap,
                      size_t *n_out,
                      size_t *certified_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETADYN_H */
