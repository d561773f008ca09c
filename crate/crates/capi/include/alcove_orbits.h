#pragma once

/* Generated by cbindgen from the alcove-orbits-capi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum AlcStatus {
  ALC_STATUS_OK = 0,
  ALC_STATUS_NULL_POINTER = 1,
  ALC_STATUS_INVALID_ARGUMENT = 2,
  ALC_STATUS_BUDGET_EXCEEDED = 3,
  ALC_STATUS_UNSUPPORTED = 4,
  ALC_STATUS_INTERNAL_ERROR = 5,
} AlcStatus;

// A root system plus enumeration budgets. Opaque.
typedef struct AlcDatum AlcDatum;

// Message for the most recent failure on this thread, or NULL. The
// pointer stays valid until the next failing call on the same thread;
// copy it if you need it longer.
const char *alc_last_error_message(void);

// Library version as a static string; never freed.
const char *alc_version(void);

// Create a root system handle. `type_letter` is one of 'A'..'G' and the
// rank must fit the type. On success `*out` owns the handle.
enum AlcStatus alc_datum_new(char type_letter, size_t rank, struct AlcDatum **out);

// Release a handle from `alc_datum_new`. NULL is a no-op.
void alc_datum_free(struct AlcDatum *datum);

// Cap enumerated group and ball elements for later calls on this handle.
enum AlcStatus alc_datum_set_budget(struct AlcDatum *datum, size_t max_elements);

enum AlcStatus alc_rank(const struct AlcDatum *datum, size_t *out);

// Number of involution classes of the affine Weyl group.
enum AlcStatus alc_class_count(const struct AlcDatum *datum, size_t *out);

// The involution class table as pretty-printed JSON.
enum AlcStatus alc_classes_json(const struct AlcDatum *datum, char **out);

// Full decomposition report at the given ball radius, as JSON. The bytes
// are identical whether or not `parallel` is set.
enum AlcStatus alc_report_json(const struct AlcDatum *datum,
                               size_t radius,
                               bool parallel,
                               char **out);

// Run the brute-force cross-checks. Returns Ok when the brute-force
// partitions refine the exact ones (the hard guarantee); `*all_equal`
// additionally tells whether they matched outright at this conjugator
// radius. A refinement violation is an internal error.
enum AlcStatus alc_oracle_check(const struct AlcDatum *datum,
                                size_t radius,
                                size_t conjugator_radius,
                                bool *all_equal);

// SVG picture of the alcove ball colored by orbits of one class.
// Rank 1 and 2 only.
enum AlcStatus alc_svg(const struct AlcDatum *datum, size_t class_index, size_t radius, char **out);

// Release a string returned through an `out` parameter. NULL is a no-op.
void alc_string_free(char *s);
