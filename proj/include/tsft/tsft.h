/* Copyright 2026 The tsft Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the tsft library.
 *
 * Shifts are opaque handles. Every call returns a tsft_status; on failure
 * tsft_last_error() describes the problem for the calling thread. Strings
 * handed out through char** parameters are owned by the caller and released
 * with tsft_string_free().
 */

#ifndef TSFT_TSFT_H_
#define TSFT_TSFT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TSFT_BUILDING_LIBRARY)
#define TSFT_API __declspec(dllexport)
#else
#define TSFT_API __declspec(dllimport)
#endif
#else
#define TSFT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tsft_shift tsft_shift;

typedef enum tsft_status {
  TSFT_OK = 0,
  TSFT_ERR_PARSE = 1,       /* malformed input text */
  TSFT_ERR_ARGUMENT = 2,    /* invalid argument or unreadable file */
  TSFT_ERR_EMPTY_SHIFT = 3, /* no symbol labels an infinite tree */
  TSFT_ERR_REFUSED = 4,     /* the construction does not apply */
  TSFT_ERR_LIMIT = 5,       /* a size or state cap was hit */
  TSFT_ERR_INTERNAL = 6
} tsft_status;

typedef enum tsft_format {
  TSFT_FORMAT_TEXT = 0,
  TSFT_FORMAT_JSON = 1,
  TSFT_FORMAT_DOT = 2
} tsft_format;

typedef enum tsft_property {
  TSFT_IRREDUCIBLE = 0,
  TSFT_MIXING = 1,
  TSFT_CHAOS = 2
} tsft_property;

typedef struct tsft_options {
  tsft_format format;
  int timing;             /* nonzero: report wall time */
  size_t verify_depth;    /* periodic checks; 0 picks the certificate default */
  size_t max_states;      /* per-fixpoint state cap */
  size_t digit_threshold; /* entropy: exact counts up to this many digits */
} tsft_options;

TSFT_API void tsft_options_init(tsft_options* options);

TSFT_API const char* tsft_version(void);
TSFT_API const char* tsft_status_name(tsft_status status);
/* Message of the last failure on this thread; "" when none. */
TSFT_API const char* tsft_last_error(void);

/* Matrix or forbidden-set text. arity 0 keeps the file's value. */
TSFT_API tsft_status tsft_load(const char* path, unsigned arity,
                               tsft_shift** out);
TSFT_API tsft_status tsft_parse(const char* text, unsigned arity,
                                tsft_shift** out);
TSFT_API void tsft_free(tsft_shift* shift);

TSFT_API size_t tsft_alphabet_size(const tsft_shift* shift);
TSFT_API unsigned tsft_arity(const tsft_shift* shift);
/* Conversion notes from loading, one per line; may be empty. */
TSFT_API tsft_status tsft_input_log(const tsft_shift* shift, char** out);

/* *holds is 1 when the property holds. An empty shift yields
 * TSFT_ERR_EMPTY_SHIFT together with the report. */
TSFT_API tsft_status tsft_check(const tsft_shift* shift,
                                tsft_property property,
                                const tsft_options* options, int* holds,
                                char** report);
TSFT_API tsft_status tsft_entropy(const tsft_shift* shift, size_t m_max,
                                  const tsft_options* options, char** report);
/* block: block text such as "0(1,1)"; NULL uses the first live symbol.
 * *ok is 1 when the certificate passes its check. */
TSFT_API tsft_status tsft_periodic(const tsft_shift* shift, const char* block,
                                   const tsft_options* options, int* ok,
                                   char** report);
/* TEXT: matrix file, JSON: shift object, DOT: labeled graph. */
TSFT_API tsft_status tsft_export(const tsft_shift* shift, tsft_format format,
                                 char** out);
/* Re-checks a JSON report. *ok is 1 when every check passes. */
TSFT_API tsft_status tsft_verify_report(const char* report,
                                        tsft_format format, int* ok,
                                        char** summary);
/* Decider versus bounded search. shift NULL runs `count` random instances
 * drawn from `seed`. *agree is 1 when nothing disagrees. */
TSFT_API tsft_status tsft_oracle(const tsft_shift* shift, uint64_t seed,
                                 size_t count, size_t depth,
                                 tsft_format format, int* agree,
                                 char** report);

TSFT_API void tsft_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* TSFT_TSFT_H_ */
