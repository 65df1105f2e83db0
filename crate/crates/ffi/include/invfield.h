#ifndef INVFIELD_H
#define INVFIELD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum InvfStatus {
  INVF_STATUS_OK = 0,
  INVF_STATUS_NULL_POINTER = 1,
  INVF_STATUS_INVALID_UTF8 = 2,
  INVF_STATUS_PARSE_ERROR = 3,
  INVF_STATUS_INVALID_INPUT = 4,
  INVF_STATUS_GROUP_TOO_LARGE = 5,
  INVF_STATUS_BUDGET_EXCEEDED = 6,
  INVF_STATUS_INTERNAL = 7,
  /**
   * The report was produced but some asserted inequality fails.
   */
  INVF_STATUS_BOUND_VIOLATED = 8,
} InvfStatus;

/**
 * A parsed group description with its enumerated group.
 */
typedef struct InvfContext InvfContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *invf_version(void);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on this thread.
 */
const char *invf_last_error(void);

/**
 * Parses a group description document and enumerates the group.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum InvfStatus invf_context_from_json(const char *json, struct InvfContext **out);

/**
 * Loads a bundled description by name (for example `q8`) or a file path.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum InvfStatus invf_context_load(const char *name, struct InvfContext **out);

/**
 * Releases a context. Null is ignored.
 *
 * # Safety
 * `ctx` must come from this library and not be used afterwards.
 */
void invf_context_free(struct InvfContext *ctx);

/**
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum InvfStatus invf_group_order(const struct InvfContext *ctx, size_t *out);

/**
 * Spanning degree. `fast_rank` enables the randomized rank shortcut.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum InvfStatus invf_dspan(const struct InvfContext *ctx, bool fast_rank, uint32_t *out);

/**
 * Least degree containing a copy of the regular representation.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum InvfStatus invf_dreg(const struct InvfContext *ctx, uint32_t *out);

/**
 * Full pipeline; writes the JSON report to `out`. A report is written even
 * when the status is `BoundViolated`. `budget_secs` limits the orbit ideal
 * (0 for no limit); an overrun is recorded in the report, not an error.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum InvfStatus invf_verify_json(const struct InvfContext *ctx, uint64_t budget_secs, char **out);

/**
 * Spanning data and the generic orbit ideal as a JSON report.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum InvfStatus invf_orbit_ideal_json(const struct InvfContext *ctx,
                                      uint64_t budget_secs,
                                      char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void invf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INVFIELD_H */
