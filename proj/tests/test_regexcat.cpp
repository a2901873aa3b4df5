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

#include "doctest.h"
#include "doctrina/io.hpp"
#include "doctrina/regexcat.hpp"
#include "oracles.hpp"

using namespace doctrina;

namespace {

DoctrinePtr loaded(const std::string& name) { return load_doctrine_file(oracle::fixture(name)).doctrine; }

}  // namespace

TEST_CASE("Reg(FIX-1) is the 2-chain") {
  auto p = loaded("fix1.json");
  RelationalCategory r = reg_completion(p);
  CHECK(r.laws.pass);
  Index bot = r.find_object(0, 0), top = r.find_object(0, 1);
  REQUIRE(r.cat->hom(bot, top).size() == 1);
  CHECK(r.cat->hom(top, bot).empty());
  Index f = r.cat->hom(bot, top)[0];
  CHECK(r.relation[f] == 0);

  CHECK(is_regular_epi(r, r.cat->identity(top)));
  CHECK_FALSE(is_regular_epi(r, f));
  ImageFactorization im = image_factorization(r, f);
  CHECK(r.cat->cod(im.epi) == bot);
  CHECK(im.mono == f);
  CHECK(is_relational_mono(r, f));
  CHECK(check_regular_epis(r).pass);
  CHECK(check_images(r).pass);
  CHECK(is_regular_projective(r, top));
}

TEST_CASE("Reg(Sub_Diamond) satisfies the category laws") {
  RelationalCategory r = reg_completion(loaded("subdiamond.json"));
  CHECK(r.laws.pass);
  CHECK(r.laws.checked > 0);
  CHECK(check_regular_epis(r).pass);
  CHECK(check_images(r).pass);
}

TEST_CASE("Reg(FlatDiamond) identifies all carriers") {
  auto p = loaded("flatdiamond.json");
  RelationalCategory r = reg_completion(p);
  // Oracle: reindexing is the identity, so (A,α) → (B,β) is one arrow when α ≤ β and none otherwise.
  for (Index x = 0; x < static_cast<Index>(r.objects.size()); ++x)
    for (Index y = 0; y < static_cast<Index>(r.objects.size()); ++y) {
      bool leq = r.objects[x].pred <= r.objects[y].pred;
      CHECK(r.cat->hom(x, y).size() == (leq ? 1u : 0u));
    }
  for (Index x = 0; x < static_cast<Index>(r.objects.size()); ++x) CHECK(is_regular_projective(r, x));
}

TEST_CASE("identity functor and exact comparison") {
  auto p = loaded("fix1.json");
  RelationalCategory reg = reg_completion(p);
  Functor id = identity_functor(reg.cat);
  CHECK(check_functor(id).pass);
  Report eq = check_equivalence(id);
  CHECK(eq.pass);
  CHECK(eq.details["essentially_surjective"].get<bool>());

  for (const char* name : {"fix1.json", "subdiamond.json"}) {
    auto d = loaded(name);
    RelationalCategory r = reg_completion(d);
    RelationalCategory ex = ex_completion(d);
    RelationalCategory exr = ex_reg_crosscheck(r.cat);
    CHECK_MESSAGE(check_equivalence(ex_comparison(ex, r, exr)).pass, name);
  }
}
