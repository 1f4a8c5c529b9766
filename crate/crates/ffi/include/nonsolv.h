#ifndef NONSOLV_H
#define NONSOLV_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Condition codes accepted by [`ns_group_check`].
 */
typedef enum NsCondition {
  NS_CONDITION_THOMPSON = 0,
  NS_CONDITION_KAPLAN_LEVY = 1,
  NS_CONDITION_THREE_PO = 2,
  NS_CONDITION_THREE_PPO = 3,
  NS_CONDITION_THREE_SS = 4,
} NsCondition;

/**
 * Sylow conjugate search strategy for the 3SS condition.
 */
typedef enum NsSearchMode {
  NS_SEARCH_MODE_EXHAUSTIVE = 0,
  NS_SEARCH_MODE_FAST = 1,
} NsSearchMode;

/**
 * Result of every fallible call.
 */
typedef enum NsStatus {
  NS_STATUS_OK = 0,
  NS_STATUS_NULL_ARGUMENT = 1,
  NS_STATUS_INVALID_UTF8 = 2,
  NS_STATUS_INVALID_ARGUMENT = 3,
  NS_STATUS_PARSE = 4,
  NS_STATUS_ORDER_CAP_EXCEEDED = 5,
  NS_STATUS_UNKNOWN_CLASS = 6,
  NS_STATUS_TABLE_INVALID = 7,
  NS_STATUS_WRONG_TABLE = 8,
  NS_STATUS_IO = 9,
  NS_STATUS_INTERNAL = 10,
  NS_STATUS_PANIC = 11,
} NsStatus;

/**
 * An enumerated finite group.
 */
typedef struct NsGroup NsGroup;

/**
 * A validated character table.
 */
typedef struct NsTable NsTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL after a
 * successful call. The pointer stays valid until the next call into the
 * library from the same thread.
 */
const char *ns_last_error_message(void);

/**
 * Version of the structured documents produced by [`ns_group_analyze_json`].
 */
uint32_t ns_schema_version(void);

/**
 * Builds a group from a JSON group definition. `max_order` of 0 selects the
 * default cap.
 *
 * # Safety
 * `definition` must be a nul-terminated string and `out` a valid pointer.
 */
enum NsStatus ns_group_from_definition(const char *definition,
                                       size_t max_order,
                                       struct NsGroup **out);

/**
 * Builds a group from the built-in catalog by name (case-insensitive).
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum NsStatus ns_group_from_catalog(const char *name, size_t max_order, struct NsGroup **out);

/**
 * Releases a group. NULL is ignored.
 *
 * # Safety
 * `group` must come from this library and not be used afterwards.
 */
void ns_group_free(struct NsGroup *group);

/**
 * # Safety
 * `group` and `out` must be valid pointers.
 */
enum NsStatus ns_group_order(const struct NsGroup *group, size_t *out);

/**
 * # Safety
 * `group` and `out` must be valid pointers.
 */
enum NsStatus ns_group_is_solvable(const struct NsGroup *group, bool *out);

/**
 * Decides one condition. `condition_code` is an [`NsCondition`] and `mode` an
 * [`NsSearchMode`]. `conclusive` may be NULL; it is false only for a failed
 * 3SS search in fast mode.
 *
 * # Safety
 * `group` and `holds` must be valid pointers; `conclusive` valid or NULL.
 */
enum NsStatus ns_group_check(const struct NsGroup *group,
                             uint32_t condition_code,
                             uint32_t mode,
                             bool *holds,
                             bool *conclusive);

/**
 * Counts `(x, y, z)` with `xyz = 1` over three classes by enumeration.
 * Selectors are class labels or element orders, as on the command line.
 *
 * # Safety
 * All pointers must be valid; selectors nul-terminated.
 */
enum NsStatus ns_group_count_triples(const struct NsGroup *group,
                                     const char *class1,
                                     const char *class2,
                                     const char *class3,
                                     uint64_t *out);

/**
 * Loads and validates a character table document.
 *
 * # Safety
 * `document` must be nul-terminated and `out` a valid pointer.
 */
enum NsStatus ns_table_load(const char *document, struct NsTable **out);

/**
 * Releases a table. NULL is ignored.
 *
 * # Safety
 * `table` must come from this library and not be used afterwards.
 */
void ns_table_free(struct NsTable *table);

/**
 * Counts class triples from the character table after matching its classes
 * to those of `group`. Selectors may use table labels.
 *
 * # Safety
 * All pointers must be valid; selectors nul-terminated.
 */
enum NsStatus ns_table_count_triples(const struct NsGroup *group,
                                     const struct NsTable *table,
                                     const char *class1,
                                     const char *class2,
                                     const char *class3,
                                     uint64_t *out);

/**
 * Full condition report as a JSON document. Release the result with
 * [`ns_string_free`].
 *
 * # Safety
 * `group` and `out` must be valid pointers.
 */
enum NsStatus ns_group_analyze_json(const struct NsGroup *group, uint32_t mode, char **out);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ns_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NONSOLV_H */
