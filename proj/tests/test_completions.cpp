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
#include "doctrina/completions.hpp"
#include "doctrina/io.hpp"
#include "oracles.hpp"

using namespace doctrina;

namespace {

DoctrinePtr loaded(const std::string& name) { return load_doctrine_file(oracle::fixture(name)).doctrine; }

std::size_t order_pairs(const Doctrine& p, Index a) {
  std::size_t n = 0;
  for (Index x = 0; x < static_cast<Index>(p.size(a)); ++x)
    for (Index y = 0; y < static_cast<Index>(p.size(a)); ++y) n += p.leq(a, x, y) ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("existential completion of FIX-1 is FIX-1") {
  auto p = loaded("fix1.json");
  ExistentialCompletion e = existential_completion(p);
  CHECK(e.doctrine->size(0) == 2);
  CHECK(validate_morphism(e.inclusion).pass);
  CHECK(validate_doctrine(*e.doctrine, Level::kExistential).pass);
}

TEST_CASE("existential completion of the tops of Sub_Diamond is Sub_Diamond") {
  LoadedDoctrine sd = load_doctrine_file(oracle::fixture("subdiamond.json"));
  auto tops = std::make_shared<Doctrine>(restrict(*sd.doctrine, Subdoctrine::tops(*sd.doctrine)).doctrine);
  ExistentialCompletion e = existential_completion(tops);
  const Doctrine& d = *e.doctrine;
  CHECK(validate_doctrine(d, Level::kExistential).pass);
  for (Index a = 0; a < static_cast<Index>(d.cat().num_objects()); ++a) {
    CHECK(d.size(a) == sd.doctrine->size(a));
    CHECK(order_pairs(d, a) == order_pairs(*sd.doctrine, a));
  }
  Subdoctrine image = inclusion_image(e);
  for (const auto& fiber : image.elements) CHECK(fiber.size() == 1);
}

TEST_CASE("comprehension completion of FIX-1") {
  ComprehensionCompletion cc = comprehension_completion(loaded("fix1.json"));
  // Oracle: pairs α ≤ β in the 2-chain, one arrow per pair.
  CHECK(cc.cat->num_objects() == 2);
  CHECK(cc.cat->num_morphisms() == 3);
}

TEST_CASE("extensional reflection") {
  for (const char* name : {"fix1.json", "subdiamond.json", "fix3.json"}) {
    auto p = loaded(name);
    ExtensionalReflection x = extensional_reflection(p);
    // Distinct arrows are distinct functions or poset arrows, so nothing is identified.
    CHECK_MESSAGE(x.cat->num_morphisms() == p->cat().num_morphisms(), name);
  }
}

TEST_CASE("Pred(FIX-1) is the 2-chain") {
  PredCategory pc = pred_category(loaded("fix1.json"));
  CHECK(pc.cat->num_objects() == 2);
  CHECK(pc.cat->num_morphisms() == 3);
  CHECK(check_pred(pc).pass);
  CHECK(check_m_variational(*pc.doctrine).pass);
}

TEST_CASE("comprehension search") {
  auto sd = loaded("subdiamond.json");
  const FinCat& c = sd->cat();
  Index one = c.find_object("1"), zero = c.find_object("0");
  ComprehensionResult top = comprehension(*sd, one, sd->top(one));
  CHECK(top.arrow == c.identity(one));
  CHECK(top.strength == Strength::kStrong);
  ComprehensionResult bottom = comprehension(*sd, one, oracle::element(*sd, "1", "[0<=1]"));
  REQUIRE(bottom.arrow != kNone);
  CHECK(c.dom(bottom.arrow) == zero);
  CHECK(bottom.strength == Strength::kStrong);

  auto flat = loaded("flatdiamond.json");
  ComprehensionResult none = comprehension(*flat, one, oracle::element(*flat, "1", "bot"));
  CHECK(none.strength == Strength::kNone);
}
