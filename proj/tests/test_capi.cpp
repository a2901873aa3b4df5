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

#include <string>

#include "doctest.h"
#include "doctrina/doctrina.h"
#include "json.hpp"

extern "C" int capi_c_validate(const char* path);

namespace {

std::string fixture(const std::string& name) { return std::string(DOCTRINA_FIXTURES) + "/" + name; }

nlohmann::json take(char* s) {
  REQUIRE(s != nullptr);
  nlohmann::json j = nlohmann::json::parse(s);
  dct_string_free(s);
  return j;
}

struct Doc {
  dct_doctrine* d = nullptr;
  explicit Doc(const std::string& name, int bound = -1) {
    REQUIRE(dct_doctrine_load(fixture(name).c_str(), bound, &d) == DCT_OK);
  }
  ~Doc() { dct_doctrine_free(d); }
};

}  // namespace

TEST_CASE("the header compiles as C") { CHECK(capi_c_validate(fixture("fix1.json").c_str()) == DCT_OK); }

TEST_CASE("validate reports per level") {
  Doc fix1("fix1.json");
  char* out = nullptr;
  REQUIRE(dct_validate(fix1.d, "existential", &out) == DCT_OK);
  auto j = take(out);
  CHECK(j["reports"][0]["pass"].get<bool>());

  Doc bad("fix1_bad_delta.json");
  REQUIRE(dct_validate(bad.d, "elementary", &out) == DCT_OK);
  CHECK_FALSE(take(out)["reports"][0]["pass"].get<bool>());
  CHECK(dct_validate(fix1.d, "bogus", &out) == DCT_USAGE);
}

TEST_CASE("errors carry codes and messages") {
  dct_doctrine* d = nullptr;
  CHECK(dct_doctrine_load(fixture("missing.json").c_str(), -1, &d) != DCT_OK);
  CHECK(d == nullptr);
  CHECK(std::string(dct_last_error()).size() > 0);
  CHECK(dct_doctrine_parse("{not json", ".", -1, &d) == DCT_PARSE);
  CHECK(dct_doctrine_parse(R"({"base": {"kind": "poset", "objects": ["a"], "order": []}})", ".", -1, &d) != DCT_OK);
}

TEST_CASE("completion keeps provenance") {
  Doc sd("subdiamond.json");
  dct_doctrine* e = nullptr;
  REQUIRE(dct_complete(sd.d, "exists", &e) == DCT_OK);
  char* out = nullptr;
  REQUIRE(dct_doctrine_to_json(e, &out) == DCT_OK);
  auto j = take(out);
  CHECK(j["provenance"]["completion"] == "exists");
  REQUIRE(dct_validate(e, "existential", &out) == DCT_OK);
  CHECK(take(out)["reports"][0]["pass"].get<bool>());
  dct_doctrine_free(e);
}

TEST_CASE("checks and the main theorem") {
  Doc flat("flatdiamond.json");
  char* out = nullptr;
  REQUIRE(dct_check(flat.d, "rc", nullptr, &out) == DCT_OK);
  CHECK_FALSE(take(out)["reports"][0]["pass"].get<bool>());
  REQUIRE(dct_check(flat.d, "splitting", "0:bot", &out) == DCT_OK);
  CHECK(take(out)["reports"][0]["pass"].get<bool>());
  CHECK(dct_check(flat.d, "nonsense", nullptr, &out) == DCT_USAGE);

  Doc sd("subdiamond.json");
  REQUIRE(dct_thm_main(sd.d, R"({"select": "tops"})", 0, &out) == DCT_OK);
  auto j = take(out);
  bool pass = true;
  for (const auto& r : j["reports"]) pass = pass && r["pass"].get<bool>();
  CHECK(pass);
}

TEST_CASE("theories") {
  dct_theory* t = nullptr;
  REQUIRE(dct_theory_load(fixture("sigr.theory").c_str(), &t) == DCT_OK);
  char* out = nullptr;
  REQUIRE(dct_entail(t, "x:s | R(x,x) |- exists y:s. R(x,y)", &out) == DCT_OK);
  auto j = take(out);
  CHECK(j["reports"][0]["details"]["verdict"].get<bool>());
  CHECK(dct_entail(t, "x:s | S(x) |- R(x,x)", &out) == DCT_SORT_ERROR);
  dct_doctrine* m = nullptr;
  REQUIRE(dct_materialize(t, 1, 1, &m) == DCT_OK);
  REQUIRE(dct_validate(m, "existential", &out) == DCT_OK);
  CHECK(take(out)["reports"][0]["pass"].get<bool>());
  dct_doctrine_free(m);
  dct_theory_free(t);

  CHECK(dct_theory_parse("sort s\nrel R : s q\n", &t) == DCT_SORT_ERROR);
}

TEST_CASE("file hashes are stable") {
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(dct_file_hash(fixture("fix1.json").c_str(), &a) == DCT_OK);
  REQUIRE(dct_file_hash(fixture("fix1.json").c_str(), &b) == DCT_OK);
  CHECK(std::string(a) == b);
  CHECK(std::string(a).size() == 16);
  dct_string_free(a);
  dct_string_free(b);
}
