// Copyright 2026 The Doctrina Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef DOCTRINA_DOCTRINA_H_
#define DOCTRINA_DOCTRINA_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DCT_API __declspec(dllexport)
#else
#define DCT_API __attribute__((visibility("default")))
#endif

/* Status codes. Positive values match the library error kinds. */
typedef enum dct_status {
  DCT_OK = 0,
  DCT_MALFORMED_TABLE = 1,
  DCT_NO_SUCH_PAIR,
  DCT_NOT_PREORDER,
  DCT_MISSING_STRUCTURE,
  DCT_NO_WEAK_PULLBACK,
  DCT_NO_PULLBACK,
  DCT_EMPTY_SEED,
  DCT_NOT_TABULATED,
  DCT_ILL_DEFINED_QUOTIENT,
  DCT_FIBER_TOO_LARGE,
  DCT_NOT_A_SUBDOCTRINE,
  DCT_NOT_REGULAR,
  DCT_SYNTAX_ERROR,
  DCT_SORT_ERROR,
  DCT_UNSUPPORTED_FUNCTION_SYMBOL,
  DCT_UNSUPPORTED_THEORY,
  DCT_PARSE,
  DCT_USAGE,
  DCT_INTERNAL = 100
} dct_status;

typedef struct dct_doctrine dct_doctrine;
typedef struct dct_theory dct_theory;

/* Strings returned through char** outputs are owned by the caller. */
DCT_API void dct_string_free(char* s);
/* Message of the last failing call on this thread; never NULL. */
DCT_API const char* dct_last_error(void);
DCT_API const char* dct_version(void);

/* Loads a doctrine file (tables or builder form). bound >= 0 overrides the
   materialization bound of builder forms. */
DCT_API dct_status dct_doctrine_load(const char* path, int bound, dct_doctrine** out);
DCT_API dct_status dct_doctrine_parse(const char* json, const char* dir, int bound, dct_doctrine** out);
DCT_API void dct_doctrine_free(dct_doctrine* d);
/* {"name","objects","arrows","elements","hash","selections"} */
DCT_API dct_status dct_doctrine_info(const dct_doctrine* d, char** json);
DCT_API dct_status dct_doctrine_to_json(const dct_doctrine* d, char** json);
DCT_API dct_status dct_doctrine_dot(const dct_doctrine* d, char** dot);
/* Restriction to a selection, {"select":...}. */
DCT_API dct_status dct_doctrine_restrict(const dct_doctrine* d, const char* selection_json, dct_doctrine** out);

/* level: "primary", "elementary" or "existential". */
DCT_API dct_status dct_validate(const dct_doctrine* d, const char* level, char** report);
/* kind: "exists", "comprehension" or "extensional". The result carries a
   provenance block and, for "exists", the selection "inclusion". */
DCT_API dct_status dct_complete(const dct_doctrine* d, const char* kind, dct_doctrine** out);
/* Pred category checks; dot may be NULL. */
DCT_API dct_status dct_pred(const dct_doctrine* d, char** report, char** dot);
/* Reg or Ex completion with its internal checks; budget 0 means default. */
DCT_API dct_status dct_reg(const dct_doctrine* d, unsigned long long budget, char** report, char** dot);
DCT_API dct_status dct_ex(const dct_doctrine* d, unsigned long long budget, char** report, char** dot);
/* check: "rc", "cover", "epsilon" or "splitting". element is "A:i" or NULL. */
DCT_API dct_status dct_check(const dct_doctrine* d, const char* check, const char* element, char** report);
DCT_API dct_status dct_thm_main(const dct_doctrine* d, const char* selection_json, unsigned long long budget,
                                char** report);

DCT_API dct_status dct_theory_load(const char* path, dct_theory** out);
DCT_API dct_status dct_theory_parse(const char* text, dct_theory** out);
DCT_API void dct_theory_free(dct_theory* t);
/* sequent: "<ctx> | phi |- psi". */
DCT_API dct_status dct_entail(const dct_theory* t, const char* sequent, char** report);
DCT_API dct_status dct_materialize(const dct_theory* t, int ctx_bound, int size_bound, dct_doctrine** out);

/* FNV-1a content hash of a file, 16 hex digits. */
DCT_API dct_status dct_file_hash(const char* path, char** hash);

#ifdef __cplusplus
}
#endif

#endif  /* DOCTRINA_DOCTRINA_H_ */
