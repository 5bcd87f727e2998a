/* Copyright 2026 The compatwit Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

/* C interface to libcwit.
 *
 * Objects are opaque handles released with the matching *_free call. Every
 * fallible function returns a cw_status; on failure the message is available
 * from cw_last_error() on the same thread. Strings returned through char**
 * are owned by the caller and released with cw_string_free.
 */

#ifndef CW_CWIT_H_
#define CW_CWIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CW_API __declspec(dllexport)
#else
#define CW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum cw_status {
  CW_OK = 0,
  CW_REFUTED = 1,   /* a checked hypothesis is false */
  CW_UNDECIDED = 2, /* a bound was exceeded */
  CW_MALFORMED = 3, /* bad input */
  CW_INTERNAL = 4
} cw_status;

typedef struct cw_bounds {
  size_t enumeration;
  size_t isomorphism;
  size_t automorphism;
} cw_bounds;

typedef enum cw_mode { CW_MODE_ENUMERATED = 0, CW_MODE_STRETCH = 1 } cw_mode;

/* Which normal series feeds the witness construction. */
typedef enum cw_series {
  CW_SERIES_AUTO = 0, /* central if both are nilpotent, else square-free */
  CW_SERIES_CENTRAL = 1,
  CW_SERIES_SQUARE_FREE = 2
} cw_series;

typedef struct cw_group cw_group;
typedef struct cw_certificate cw_certificate;
typedef struct cw_report cw_report;

CW_API const char* cw_version(void);
CW_API const char* cw_last_error(void);
CW_API const char* cw_status_name(cw_status s);
CW_API void cw_bounds_default(cw_bounds* out);
CW_API void cw_string_free(char* s);

/* Groups. `desc` is a name such as "Z2xZ4" or a JSON descriptor. */
CW_API cw_status cw_group_new(const char* desc, const cw_bounds* bounds, cw_group** out);
CW_API void cw_group_free(cw_group* g);
CW_API size_t cw_group_order(const cw_group* g);
CW_API size_t cw_group_degree(const cw_group* g);
CW_API cw_status cw_group_to_json(const cw_group* g, char** out);
/* Order, center, derived subgroup, element-order histogram. */
CW_API cw_status cw_group_report(const cw_group* g, const cw_bounds* bounds, char** out);

/* Constructions, each returning a JSON report. */
CW_API cw_status cw_limit_report(const char* system_json, const cw_bounds* bounds, char** out);
/* h acts on the cosets of its first subgroup of order k (k = 1: regular). */
CW_API cw_status cw_wreath_report(const cw_group* g, const cw_group* h, size_t k,
                                  const cw_bounds* bounds, char** out);
/* theta: g -> h is the first homomorphism whose image is isomorphic to image. */
CW_API cw_status cw_hybrid_report(const cw_group* g, const cw_group* h, const cw_group* image,
                                  const cw_bounds* bounds, char** out);
CW_API cw_status cw_series_report(const cw_group* l, cw_series kind, char** out);
CW_API cw_status cw_comp_check(const cw_group* l1, const cw_group* l2, cw_series kind,
                               const cw_bounds* bounds, char** out);

/* Witness certificates. */
CW_API cw_status cw_witness_build(const cw_group* l1, const cw_group* l2, cw_series kind,
                                  cw_mode mode, const cw_bounds* bounds, cw_certificate** out);
CW_API void cw_certificate_free(cw_certificate* c);
CW_API cw_mode cw_certificate_mode(const cw_certificate* c);
CW_API uint64_t cw_certificate_order(const cw_certificate* c);
CW_API cw_status cw_certificate_to_json(const cw_certificate* c, char** out);
CW_API cw_status cw_certificate_from_json(const char* json, const cw_bounds* bounds,
                                          cw_certificate** out);
/* Quotient d (0 or 1) as a new group handle. */
CW_API cw_status cw_certificate_quotient(const cw_certificate* c, int d, cw_group** out);
/* samples and seed apply to stretch certificates only. */
CW_API cw_status cw_certificate_verify(const cw_certificate* c, const cw_group* l1,
                                       const cw_group* l2, const cw_bounds* bounds,
                                       size_t samples, uint64_t seed, cw_report** out);

CW_API void cw_report_free(cw_report* r);
CW_API int cw_report_passed(const cw_report* r);
CW_API size_t cw_report_size(const cw_report* r);
/* Borrowed pointers, valid until the report is freed. */
CW_API cw_status cw_report_check(const cw_report* r, size_t i, const char** name, int* passed,
                                 const char** detail);
CW_API cw_status cw_report_to_json(const cw_report* r, char** out);

/* The named examples with a pass/fail manifest. */
CW_API cw_status cw_examples_run(const cw_bounds* bounds, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CW_CWIT_H_ */
