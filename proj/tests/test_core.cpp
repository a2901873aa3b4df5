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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "doctrina/core.hpp"
#include "doctrina/io.hpp"
#include "oracles.hpp"

using namespace doctrina;

namespace {

FinCat diamond() { return load_base(read_json_file(oracle::fixture("diamond.json"))); }

}  // namespace

TEST_CASE("one-object trivial category validates") {
  FinCat c;
  Index s = c.add_object("*");
  Index id = c.add_identity(s, "id");
  c.set_composite(id, id, id);
  c.set_terminal(s);
  c.set_product(s, s, {s, id, id});
  CHECK(validate_base(c).pass);
}

TEST_CASE("diamond poset: chosen products are meets") {
  FinCat c = diamond();
  CHECK(validate_base(c).pass);
  // Oracle: the meet is the greatest common lower bound by brute force.
  const auto n = static_cast<Index>(c.num_objects());
  auto leq = [&](Index x, Index y) { return !c.hom(x, y).empty(); };
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      Index m = product_of(c, a, b).object;
      CHECK(leq(m, a));
      CHECK(leq(m, b));
      for (Index z = 0; z < n; ++z)
        if (leq(z, a) && leq(z, b)) CHECK(leq(z, m));
    }
}

TEST_CASE("broken diamond product fails at (a,b)") {
  Report r = validate_base(load_base(read_json_file(oracle::fixture("diamond_broken.json"))));
  CHECK_FALSE(r.pass);
  REQUIRE(r.failed("product-ump"));
  CHECK(r.failures[0]["witness"]["pair"] == Json::array({"a", "b"}));
}

TEST_CASE("poset reflection") {
  SUBCASE("antisymmetric input gives the identity quotient") {
    auto order = order_closure(3, {{0, 1}, {1, 2}});
    PosetReflection r = poset_reflection(3, [&](Index a, Index b) { return order[a * 3 + b] != 0; });
    CHECK(r.size() == 3);
  }
  SUBCASE("two mutually related elements collapse") {
    PosetReflection r = poset_reflection(2, [](Index, Index) { return true; });
    CHECK(r.size() == 1);
  }
  SUBCASE("4-element preorder with one 2-cycle") {
    std::vector<std::pair<Index, Index>> gens = {{0, 1}, {1, 0}, {1, 2}, {0, 3}};
    auto order = order_closure(4, gens);
    PosetReflection r = poset_reflection(4, [&](Index a, Index b) { return order[a * 4 + b] != 0; });
    CHECK(r.size() == 3);
    CHECK(r.class_of[0] == r.class_of[1]);
    // Oracle: pairwise closure by repeated relaxation.
    bool rel[4][4] = {};
    for (int i = 0; i < 4; ++i) rel[i][i] = true;
    for (auto [a, b] : gens) rel[a][b] = true;
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rel[i][j] = rel[i][j] || (rel[i][k] && rel[k][j]);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j) CHECK(r.leq(r.class_of[i], r.class_of[j]) == rel[i][j]);
  }
  SUBCASE("non-transitive input is rejected") {
    auto leq = [](Index a, Index b) { return a == b || (a == 0 && b == 1) || (a == 1 && b == 2); };
    CHECK_THROWS_AS(poset_reflection(3, leq), Error);
  }
}

TEST_CASE("generated category words") {
  GenCat one({{"B", {"x", "y"}}});
  CHECK(one.enumerate_objects(0).size() == 1);
  auto words = one.enumerate_objects(2);
  REQUIRE(words.size() == 3);
  CHECK(words[0].empty());
  CHECK(one.word_name(words[2]) == "BB");

  GenCat two({{"B", {"x", "y"}}, {"C", {"u"}}});
  // Oracle: 1 + k + k^2 words of length at most 2 over k seeds.
  CHECK(two.enumerate_objects(2).size() == 1 + 2 + 4);
}

TEST_CASE("generated category materializes all functions") {
  GenCat g({{"B", {"x", "y"}}});
  FinCat c = g.materialize(2);
  CHECK(validate_base(c).pass);
  // Oracle: sum over word pairs of |cod|^|dom| with cardinalities 1, 2, 4.
  std::size_t expected = 0;
  for (std::size_t d : {1, 2, 4})
    for (std::size_t e : {1, 2, 4}) {
      std::size_t k = 1;
      for (std::size_t i = 0; i < d; ++i) k *= e;
      expected += k;
    }
  CHECK(c.num_morphisms() == expected);
  for (std::size_t i = 0; i < 4; ++i) CHECK(g.encode({0, 0}, g.decode({0, 0}, i)) == i);
}
