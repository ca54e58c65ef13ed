#ifndef LPI_H
#define LPI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LpiGround {
  LPI_GROUND_AUTO = 0,
  LPI_GROUND_ELEMENTS = 1,
  LPI_GROUND_UNITS = 2,
} LpiGround;

typedef enum LpiMode {
  LPI_MODE_EXHAUSTIVE = 0,
  LPI_MODE_RANDOM = 1,
} LpiMode;

typedef enum LpiOutcome {
  LPI_OUTCOME_HOLDS = 0,
  LPI_OUTCOME_COUNTEREXAMPLE = 1,
  LPI_OUTCOME_INCONCLUSIVE = 2,
} LpiOutcome;

typedef enum LpiStatus {
  LPI_STATUS_OK = 0,
  LPI_STATUS_NULL_POINTER = 1,
  LPI_STATUS_INVALID_UTF8 = 2,
  LPI_STATUS_PARSE = 3,
  LPI_STATUS_INVALID_ARGUMENT = 4,
  LPI_STATUS_CHECK_FAILED = 5,
  LPI_STATUS_PANIC = 6,
} LpiStatus;

/**
 * An algebra descriptor such as `M2@Fp:2`.
 */
typedef struct LpiAlgebra LpiAlgebra;

/**
 * A parsed group-algebra element together with its coefficient ring.
 */
typedef struct LpiExpr LpiExpr;

typedef struct LpiConfig {
  enum LpiMode mode;
  uint64_t budget;
  uint64_t cap;
  uint64_t seed;
  uint32_t workers;
} LpiConfig;

/**
 * `(l, r, d)` of the normalized element and the substitution used.
 * `variable` is 0 when no substitution was needed.
 */
typedef struct LpiProfile {
  int64_t l;
  int64_t r;
  int64_t d;
  uint32_t variable;
  uint32_t k;
} LpiProfile;

typedef struct LpiBounds {
  uint64_t d;
  uint64_t q;
  uint64_t max_field_size;
  uint64_t max_n;
} LpiBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call on the same thread.
 */
const char *lpi_last_error(void);

void lpi_string_free(char *s);

const char *lpi_version(void);

/**
 * Exhaustive mode, budget 1000, cap 2^24, seed 0, one worker.
 */
struct LpiConfig lpi_config_default(void);

/**
 * Parses `text` over `ring` (`"ZZ"` or `"Fp:p"`).
 */
enum LpiStatus lpi_expr_parse(const char *text_, const char *ring, struct LpiExpr **out_);

void lpi_expr_free(struct LpiExpr *e);

/**
 * Canonical text, owned by the handle.
 */
const char *lpi_expr_canonical(const struct LpiExpr *e);

/**
 * Normalizes and profiles the element; fails with `LPI_STATUS_INVALID_ARGUMENT`
 * when it is not admissible.
 */
enum LpiStatus lpi_expr_profile(const struct LpiExpr *e, struct LpiProfile *out_);

enum LpiStatus lpi_algebra_new(const char *desc, struct LpiAlgebra **out_);

void lpi_algebra_free(struct LpiAlgebra *a);

/**
 * Checks `e` on the algebra. The verdict is written to `outcome`; when
 * `json` is not null it receives the verdict as JSON. `config` may be null.
 */
enum LpiStatus lpi_check_lpi(const struct LpiAlgebra *a,
                             const struct LpiExpr *e,
                             enum LpiGround ground,
                             const struct LpiConfig *config,
                             enum LpiOutcome *outcome,
                             char **json);

/**
 * Checks the group word `word` on the units of the algebra.
 */
enum LpiStatus lpi_check_gi(const struct LpiAlgebra *a,
                            const char *word,
                            const struct LpiConfig *config,
                            enum LpiOutcome *outcome,
                            char **json);

/**
 * Bounds on the field size and matrix dimension; `q = 0` selects the default.
 */
enum LpiStatus lpi_bounds(uint64_t d, uint64_t q, struct LpiBounds *out_);

/**
 * Runs the command line with `argv[0..argc]` (without the program name).
 * Standard output and error are returned as strings; either pointer may be
 * null. Returns the exit code, or -1 on invalid arguments.
 */
int32_t lpi_run(size_t argc, const char *const *argv, char **stdout_, char **stderr_);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LPI_H */
