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

#include "doctrina/error.hpp"
#include "doctrina/report.hpp"

namespace doctrina {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kMalformedTable: return "MalformedTable";
    case ErrorCode::kNoSuchPair: return "NoSuchPair";
    case ErrorCode::kNotPreorder: return "NotPreorder";
    case ErrorCode::kMissingStructure: return "MissingStructure";
    case ErrorCode::kNoWeakPullback: return "NoWeakPullback";
    case ErrorCode::kNoPullback: return "NoPullback";
    case ErrorCode::kEmptySeed: return "EmptySeed";
    case ErrorCode::kNotTabulated: return "NotTabulated";
    case ErrorCode::kIllDefinedQuotient: return "IllDefinedQuotient";
    case ErrorCode::kFiberTooLarge: return "FiberTooLarge";
    case ErrorCode::kNotASubdoctrine: return "NotASubdoctrine";
    case ErrorCode::kNotRegular: return "NotRegular";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kSortError: return "SortError";
    case ErrorCode::kUnsupportedFunctionSymbol: return "UnsupportedFunctionSymbol";
    case ErrorCode::kUnsupportedTheory: return "UnsupportedTheory";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kUsage: return "UsageError";
  }
  return "Error";
}

void Report::fail(const std::string& law, Json witness) {
  pass = false;
  if (!failed_laws_.insert(law).second) return;
  Json entry = Json::object();
  entry["law"] = law;
  entry["witness"] = std::move(witness);
  failures.push_back(std::move(entry));
}

void Report::merge(const Report& other) {
  checked += other.checked;
  skipped += other.skipped;
  for (const auto& f : other.failures) {
    std::string law = other.check + "/" + f["law"].get<std::string>();
    if (failed_laws_.insert(law).second) {
      Json entry = f;
      entry["law"] = law;
      failures.push_back(std::move(entry));
    }
  }
  if (!other.pass) pass = false;
}

Json Report::to_json() const {
  Json j = Json::object();
  j["check"] = check;
  j["pass"] = pass;
  j["checked"] = checked;
  j["skipped"] = skipped;
  if (!failures.empty()) j["witness"] = failures;
  if (!details.empty()) j["details"] = details;
  return j;
}

}  // namespace doctrina
