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

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace doctrina {

using Json = nlohmann::ordered_json;

/// Outcome of a validator or verifier. Only the first counterexample of each
/// law is kept; `checked` and `skipped` count law instances, where a skipped
/// instance needed a cell that is absent from a bounded structure.
struct Report {
  std::string check;
  bool pass = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  Json failures = Json::array();
  Json details = Json::object();

  explicit Report(std::string name = {}) : check(std::move(name)) {}

  /// Records a violation of `law`; later violations of the same law are
  /// only counted.
  void fail(const std::string& law, Json witness);
  bool failed(const std::string& law) const { return failed_laws_.count(law) != 0; }
  /// Folds another report in as a sub-check.
  void merge(const Report& other);
  Json to_json() const;

 private:
  std::set<std::string> failed_laws_;
};

}  // namespace doctrina
