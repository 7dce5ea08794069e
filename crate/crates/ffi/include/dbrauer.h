#ifndef DBRAUER_H
#define DBRAUER_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum DbStatus {
  DB_STATUS_OK = 0,
  DB_STATUS_NULL_POINTER = 1,
  DB_STATUS_INVALID_UTF8 = 2,
  DB_STATUS_PARSE = 3,
  DB_STATUS_INVALID_FIELD = 4,
  DB_STATUS_FIELD_MISMATCH = 5,
  DB_STATUS_PRECISION_LOSS = 6,
  DB_STATUS_NOT_EXACT = 7,
  DB_STATUS_NOT_IN_BN = 8,
  DB_STATUS_LENGTH_MISMATCH = 9,
  DB_STATUS_UNSUPPORTED = 10,
  DB_STATUS_DIVISION_BY_ZERO = 11,
  DB_STATUS_INVALID = 12,
  DB_STATUS_PANIC = 13,
} DbStatus;

// A finite field F_q.
typedef struct DbField DbField;

// An exact global form `f(t) dt` over F_q(t).
typedef struct DbGlobalForm DbGlobalForm;

// A truncated local form `f(t) dt` over F_q((t)).
typedef struct DbLocalForm DbLocalForm;

// Outcome of the Legendre cocycle check.
typedef struct DbLegendreReport {
  bool relation;
  bool identity;
  int32_t epsilon;
  bool series_agree;
  int64_t series_window;
} DbLegendreReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread (empty after a
// successful call). Valid until the next call on this thread.
const char *dbrauer_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed.
void dbrauer_string_free(char *s);

// Parses a field descriptor such as `gf(3)` or `gf(2,2,w^2+w+1)`.
//
// # Safety
// `descriptor` must be a NUL-terminated string; `out` must be writable.
enum DbStatus dbrauer_field_new(const char *descriptor, struct DbField **out);

// # Safety
// `field` must come from [`dbrauer_field_new`] and not have been freed.
void dbrauer_field_free(struct DbField *field);

// The characteristic p, or 0 for a null handle.
//
// # Safety
// `field` must be null or a live handle.
uint32_t dbrauer_field_characteristic(const struct DbField *field);

// The degree k of F_{p^k} over F_p, or 0 for a null handle.
//
// # Safety
// `field` must be null or a live handle.
uint32_t dbrauer_field_degree(const struct DbField *field);

// Parses a local form such as `"(t^-1 + 1) dt"`, truncating series input
// at `prec`.
//
// # Safety
// `field` must be live, `src` NUL-terminated and `out` writable.
enum DbStatus dbrauer_local_form_parse(const struct DbField *field,
                                       const char *src,
                                       int64_t prec,
                                       struct DbLocalForm **out);

// # Safety
// `form` must be null or a live handle.
void dbrauer_local_form_free(struct DbLocalForm *form);

// Renders a local form; release the result with [`dbrauer_string_free`].
//
// # Safety
// `form` must be live and `out` writable.
enum DbStatus dbrauer_local_form_to_string(const struct DbLocalForm *form, char **out);

// The precision window `N` of a local form known modulo `t^N`, or -1
// when it is exact.
//
// # Safety
// `form` must be null or a live handle.
int64_t dbrauer_local_form_window(const struct DbLocalForm *form);

// `C(omega)`.
//
// # Safety
// `form` must be live and `out` writable.
enum DbStatus dbrauer_cartier(const struct DbLocalForm *form, struct DbLocalForm **out);

// The representative `f^p t^(p-1) dt` of `C^-1(f dt)`.
//
// # Safety
// `form` must be live and `out` writable.
enum DbStatus dbrauer_cartier_inverse(const struct DbLocalForm *form, struct DbLocalForm **out);

// Whether `C^n(omega) = 0`; `window` receives the certified precision
// (-1 when exact).
//
// # Safety
// `form` must be live; `member` and `window` writable.
enum DbStatus dbrauer_bn_member(const struct DbLocalForm *form,
                                uint32_t n,
                                bool *member,
                                int64_t *window);

// The local invariant `Tr Res(omega)` in `0..p`.
//
// # Safety
// `form` must be live and `out` writable.
enum DbStatus dbrauer_local_invariant(const struct DbLocalForm *form, uint32_t *out);

// Solves `(1 - C) w = omega`. When no solution exists `*solvable` is
// false and `*out` is set to null.
//
// # Safety
// `form` must be live; `solvable` and `out` writable.
enum DbStatus dbrauer_solve_one_minus_c(const struct DbLocalForm *form,
                                        bool *solvable,
                                        struct DbLocalForm **out);

// Parses an exact global form such as `"dt/(t^2 - t)"`.
//
// # Safety
// `field` must be live, `src` NUL-terminated and `out` writable.
enum DbStatus dbrauer_global_form_parse(const struct DbField *field,
                                        const char *src,
                                        struct DbGlobalForm **out);

// # Safety
// `form` must be null or a live handle.
void dbrauer_global_form_free(struct DbGlobalForm *form);

// The sum over all places of the traced residues, rendered as an element
// of the base field.
//
// # Safety
// `form` must be live and `out` writable.
enum DbStatus dbrauer_residue_sum(const struct DbGlobalForm *form, char **out);

// Runs the Legendre cocycle check for a prime `p >= 5`.
//
// # Safety
// `out` must be writable.
enum DbStatus dbrauer_legendre_check(uint32_t p, struct DbLegendreReport *out);

// Runs the command-line interface on `argv` (without the program name)
// and captures its output. Returns the process exit code, or -1 when the
// arguments are unusable.
//
// # Safety
// `argv` must hold `argc` NUL-terminated strings; `out` and `err` must be
// writable (either may be null to discard that stream).
int dbrauer_cli_run(uintptr_t argc, const char *const *argv, char **out, char **err);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DBRAUER_H */
