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
#include "doctrina/doctrine.hpp"
#include "doctrina/io.hpp"
#include "oracles.hpp"

using namespace doctrina;

namespace {

DoctrinePtr loaded(const std::string& name) { return load_doctrine_file(oracle::fixture(name)).doctrine; }

CatPtr poset_base(const std::string& name) {
  return std::make_shared<FinCat>(load_base(read_json_file(oracle::fixture(name))));
}

Index arrow(const FinCat& c, Index a, Index b) {
  REQUIRE(c.hom(a, b).size() == 1);
  return c.hom(a, b)[0];
}

}  // namespace

TEST_CASE("fixture doctrines validate at the existential level") {
  for (const char* name : {"fix1.json", "subdiamond.json", "fix3.json"})
    CHECK_MESSAGE(validate_doctrine(*loaded(name), Level::kExistential).pass, name);
}

TEST_CASE("FIX-1 with a bottom diagonal is not elementary") {
  Report r = validate_doctrine(*loaded("fix1_bad_delta.json"), Level::kElementary);
  CHECK_FALSE(r.pass);
  CHECK(r.failed("elementary-diagonal"));
}

TEST_CASE("existential quantification along arrows") {
  auto p = loaded("subdiamond.json");
  const FinCat& c = p->cat();
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a)
    for (Index x = 0; x < static_cast<Index>(p->size(a)); ++x) CHECK(exists_along(*p, c.identity(a), x) == x);
  for (Index pi : projections(c))
    for (Index x = 0; x < static_cast<Index>(p->size(c.dom(pi))); ++x) CHECK(exists_along(*p, pi, x) == p->ex(pi, x));
  CHECK(check_exists_along(*p).pass);
  // In Sub, ∃_f of the top of 0 is the image of 0 ≤ 1, the bottom of Sub(1).
  Index zero = c.find_object("0"), one = c.find_object("1");
  Index image = exists_along(*p, arrow(c, zero, one), p->top(zero));
  for (Index y = 0; y < static_cast<Index>(p->size(one)); ++y) CHECK(p->leq(one, image, y));
}

TEST_CASE("weak subobjects") {
  SUBCASE("one-object trivial base") {
    auto c = std::make_shared<FinCat>(poset_category({"*"}, {1}));
    Doctrine psi = weak_subobjects(c);
    CHECK(psi.size(0) == 1);
  }
  SUBCASE("2-chain") {
    auto c = poset_base("chain2.json");
    Doctrine psi = weak_subobjects(c);
    CHECK(psi.size(c->find_object("1")) == 2);
    CHECK(psi.size(c->find_object("0")) == 1);
    CHECK(validate_doctrine(psi, Level::kExistential).pass);
  }
  SUBCASE("unit of the projection adjunction on the diamond") {
    auto c = poset_base("diamond.json");
    Doctrine psi = weak_subobjects(c);
    for (Index pi : projections(*c))
      for (Index x = 0; x < static_cast<Index>(psi.size(c->dom(pi))); ++x)
        CHECK(psi.leq(c->dom(pi), x, psi.re(pi, psi.ex(pi, x))));
  }
}

TEST_CASE("subobject doctrine") {
  auto c = poset_base("diamond.json");
  Doctrine sub = subobjects_doctrine(c);
  // Oracle: every arrow of a poset is monic, so Sub(x) is the downset of x.
  for (Index x = 0; x < static_cast<Index>(c->num_objects()); ++x) {
    std::size_t down = 0;
    for (Index y = 0; y < static_cast<Index>(c->num_objects()); ++y) down += c->hom(y, x).empty() ? 0 : 1;
    CHECK(sub.size(x) == down);
    Index xx = product_of(*c, x, x).object;
    CHECK(sub.delta[x] == sub.top(xx));
  }
  CHECK(validate_doctrine(sub, Level::kExistential).pass);
  Doctrine chain = subobjects_doctrine(poset_base("chain2.json"));
  CHECK(chain.size(chain.cat().find_object("1")) == 2);
}

TEST_CASE("localic quantifier is a pointwise join") {
  LocalicDoctrine h({"0", "m", "1"}, GenCat({{"B", {"x", "y"}}}));
  // α(x) = m, α(y) = 0 over 1×B; the join over B is m.
  CHECK(h.exists_first({}, {0}, {1, 0}) == LocalicDoctrine::Valuation{1});
  CHECK(h.exists_first({}, {0}, {0, 2}) == LocalicDoctrine::Valuation{2});
}

TEST_CASE("doctrine morphisms") {
  auto fix1 = loaded("fix1.json");
  CHECK(validate_morphism(identity_morphism(fix1)).pass);

  LoadedDoctrine sd = load_doctrine_file(oracle::fixture("subdiamond.json"));
  Restriction tops = restrict(*sd.doctrine, Subdoctrine::tops(*sd.doctrine));
  auto sub = std::make_shared<Doctrine>(tops.doctrine);
  Report r = validate_morphism(inclusion_morphism(sub, sd.doctrine, tops.embed));
  CHECK(r.pass);
  CHECK_FALSE(r.details["preserves_exists"].get<bool>());
}
