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

#pragma once

#include <map>
#include <string>

#include "doctrina/doctrine.hpp"

namespace doctrina {

Json read_json_file(const std::string& path);
/// FNV-1a of the compact dump, as 16 hex digits.
std::string content_hash(const Json& j);

/// Base sub-schema: kinds "explicit", "poset" and "generated".
FinCat load_base(const Json& j);
Json base_to_json(const FinCat& cat);

/// A doctrine with the named selections its builder provides
/// ("tops", "whole", and "horn" for syntactic doctrines).
struct LoadedDoctrine {
  DoctrinePtr doctrine;
  std::map<std::string, Subdoctrine> selections;
};

/// Explicit tables or a builder form. `dir` resolves relative paths.
LoadedDoctrine load_doctrine(const Json& j, const std::string& dir = ".");
LoadedDoctrine load_doctrine_file(const std::string& path);
Json doctrine_to_json(const Doctrine& p);

/// {"select":{obj:[elem,...]}} or {"select":"<named selection>"}.
Subdoctrine load_selection(const Json& j, const LoadedDoctrine& p);

/// Graph description of a finite category: one node per object, one edge
/// per non-identity arrow.
std::string to_dot(const FinCat& cat, const std::string& name);

}  // namespace doctrina
