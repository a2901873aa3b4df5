/*
 * Copyright 2026 The Doctrina Authors.
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

#include "doctrina/doctrina.h"

/* Loads and validates a doctrine through the C API from C. */
int capi_c_validate(const char* path) {
  dct_doctrine* d = 0;
  char* report = 0;
  dct_status s = dct_doctrine_load(path, -1, &d);
  if (s != DCT_OK) return (int)s;
  s = dct_validate(d, "existential", &report);
  dct_string_free(report);
  dct_doctrine_free(d);
  return (int)s;
}
