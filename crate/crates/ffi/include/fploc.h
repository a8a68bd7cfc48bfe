#ifndef FPLOC_H
#define FPLOC_H

/* Generated by cbindgen from fploc-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum FplocStatus {
  FPLOC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  FPLOC_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  FPLOC_STATUS_INVALID_UTF8 = 2,
  /**
   * The file could not be read.
   */
  FPLOC_STATUS_IO = 3,
  /**
   * The file content did not parse as the expected document.
   */
  FPLOC_STATUS_PARSE = 4,
  /**
   * Arguments or document content violate a contract.
   */
  FPLOC_STATUS_INVALID_INPUT = 5,
  /**
   * The measurement shares too few anchors with the map.
   */
  FPLOC_STATUS_NO_ELIGIBLE_POINTS = 6,
  /**
   * An internal panic was caught at the boundary.
   */
  FPLOC_STATUS_PANIC = 7,
} FplocStatus;

/**
 * A localizer bound to one radio map. Opaque.
 */
typedef struct FplocLocalizer FplocLocalizer;

/**
 * A loaded radio map. Opaque.
 */
typedef struct FplocRadioMap FplocRadioMap;

/**
 * A trailing moving-average filter over positions. Opaque.
 */
typedef struct FplocSmoother FplocSmoother;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Never null; empty
 * before the first failure. Valid until the next failing call on the same
 * thread.
 */
const char *fploc_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *fploc_version(void);

/**
 * Loads a radio map JSON file produced by the pipeline.
 *
 * # Safety
 * `path` must be nul-terminated; `out` must point to writable memory.
 */
enum FplocStatus fploc_radio_map_load(const char *path, struct FplocRadioMap **out);

/**
 * Frees a map handle. Null is a no-op.
 *
 * # Safety
 * `map` must have come from [`fploc_radio_map_load`] and not be freed twice.
 */
void fploc_radio_map_free(struct FplocRadioMap *map);

/**
 * Number of grid points, or 0 for a null handle.
 *
 * # Safety
 * `map` must be a live handle or null.
 */
size_t fploc_radio_map_point_count(const struct FplocRadioMap *map);

/**
 * Grid spacing in meters, or NaN for a null handle.
 *
 * # Safety
 * `map` must be a live handle or null.
 */
double fploc_radio_map_spacing(const struct FplocRadioMap *map);

/**
 * Creates a localizer over `map` with the given query parameters. The map
 * handle must outlive the localizer only for this call; the localizer keeps
 * its own copy of the data it needs.
 *
 * # Safety
 * `map` must be a live handle; `out` must point to writable memory.
 */
enum FplocStatus fploc_localizer_new(const struct FplocRadioMap *map,
                                     size_t k,
                                     size_t min_common_anchors,
                                     double distance_epsilon,
                                     struct FplocLocalizer **out);

/**
 * Frees a localizer handle. Null is a no-op.
 *
 * # Safety
 * `localizer` must have come from [`fploc_localizer_new`] and not be freed
 * twice.
 */
void fploc_localizer_free(struct FplocLocalizer *localizer);

/**
 * Estimates a position from one RSS measurement given as parallel arrays:
 * `anchor_ids[i]` (nul-terminated) measured at `levels[i]` dBm, `count`
 * entries. A repeated anchor id keeps the last level. Writes the estimate
 * into `out_x`/`out_y`.
 *
 * # Safety
 * All pointers must be valid for `count` elements; strings nul-terminated.
 */
enum FplocStatus fploc_localize(const struct FplocLocalizer *localizer,
                                double timestamp,
                                const char *const *anchor_ids,
                                const double *levels,
                                size_t count,
                                double *out_x,
                                double *out_y);

/**
 * Creates a trailing moving-average filter over the last `window` positions.
 *
 * # Safety
 * `out` must point to writable memory.
 */
enum FplocStatus fploc_smoother_new(size_t window, struct FplocSmoother **out);

/**
 * Pushes a raw position and writes the smoothed one.
 *
 * # Safety
 * `smoother` must be a live handle; `out_x`/`out_y` must be writable.
 */
enum FplocStatus fploc_smoother_push(struct FplocSmoother *smoother,
                                     double x,
                                     double y,
                                     double *out_x,
                                     double *out_y);

/**
 * Clears the filter history, starting a new track.
 *
 * # Safety
 * `smoother` must be a live handle or null (no-op).
 */
void fploc_smoother_reset(struct FplocSmoother *smoother);

/**
 * Frees a smoother handle. Null is a no-op.
 *
 * # Safety
 * `smoother` must have come from [`fploc_smoother_new`] and not be freed
 * twice.
 */
void fploc_smoother_free(struct FplocSmoother *smoother);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FPLOC_H */
