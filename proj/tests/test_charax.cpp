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
#include "doctrina/charax.hpp"
#include "doctrina/io.hpp"
#include "oracles.hpp"

using namespace doctrina;

namespace {

LoadedDoctrine loaded(const std::string& name) { return load_doctrine_file(oracle::fixture(name)); }

bool all_elements(const Doctrine& p, const std::function<bool(Index, Index)>& pred) {
  for (Index a = 0; a < static_cast<Index>(p.cat().num_objects()); ++a)
    for (Index x = 0; x < static_cast<Index>(p.size(a)); ++x)
      if (!pred(a, x)) return false;
  return true;
}

}  // namespace

TEST_CASE("splitting elements") {
  auto fix1 = loaded("fix1.json").doctrine;
  SplitReport bot = is_splitting(*fix1, 0, 0);
  CHECK(bot.verdict);
  CHECK(bot.witness["h"] == "id");

  auto sd = loaded("subdiamond.json").doctrine;
  Index one = sd->cat().find_object("1"), a = sd->cat().find_object("a");
  SplitReport sub = is_splitting(*sd, one, oracle::element(*sd, "1", "[a<=1]"));
  CHECK_FALSE(sub.verdict);
  CHECK(sub.witness["projection"] == "a<=1");
  CHECK(sub.witness["beta"] == "a:[a<=a]");
  CHECK(oracle::splits(*sd, one, oracle::element(*sd, "1", "[a<=1]")) == false);
  CHECK(is_splitting(*sd, a, sd->top(a)).verdict);
  CHECK(all_elements(*sd, [&](Index x, Index y) { return is_splitting(*sd, x, y).verdict == oracle::splits(*sd, x, y); }));
}

TEST_CASE("free elements") {
  auto sd = loaded("subdiamond.json").doctrine;
  for (Index a = 0; a < static_cast<Index>(sd->cat().num_objects()); ++a) CHECK(is_free(*sd, a, sd->top(a)));

  auto flat = loaded("flatdiamond.json").doctrine;
  Index zero = flat->cat().find_object("0");
  Index bot = oracle::element(*flat, "0", "bot");
  CHECK(is_splitting(*flat, zero, bot).verdict);
  // Only the identity arrives at 0, so freeness reduces to splitting.
  CHECK(is_free(*flat, zero, bot) == oracle::is_free(*flat, zero, bot));
  CHECK(is_free(*flat, zero, bot));

  auto fix1 = loaded("fix1.json").doctrine;
  CHECK(all_elements(*fix1, [&](Index a, Index x) { return !is_splitting(*fix1, a, x).verdict || is_free(*fix1, a, x); }));
}

TEST_CASE("rule of choice") {
  CHECK(has_rc(*loaded("fix1.json").doctrine).details["verdict"].get<bool>());
  CHECK(has_rc(*loaded("subdiamond.json").doctrine).details["verdict"].get<bool>());
  Report flat = has_rc(*loaded("flatdiamond.json").doctrine);
  CHECK_FALSE(flat.details["verdict"].get<bool>());
  bool found = false;
  for (const auto& w : flat.details["counterexamples"]) found = found || (w["A"] == "1" && w["B"] == "a");
  CHECK(found);
}

TEST_CASE("covers") {
  auto fix1 = loaded("fix1.json").doctrine;
  CoverResult whole = find_cover(*fix1);
  REQUIRE(whole.cover.has_value());
  CHECK(whole.cover->elements == Subdoctrine::whole(*fix1).elements);

  auto sd = loaded("subdiamond.json").doctrine;
  CoverResult tops = find_cover(*sd);
  REQUIRE(tops.cover.has_value());
  CHECK(tops.cover->elements == Subdoctrine::tops(*sd).elements);

  CHECK_FALSE(find_cover(*loaded("flatdiamond.json").doctrine).cover.has_value());
}

TEST_CASE("epsilon operators") {
  LocalicDoctrine h({"0", "m", "1"}, GenCat({{"B", {"x", "y"}}}));
  // α(x) = m, α(y) = 0: the argmax is x.
  CHECK(h.epsilon({}, {0}, {1, 0}) == std::vector<int>{0});
  CHECK(localic_epsilon(h, 2).pass);

  Report fix1 = epsilon_operators(*loaded("fix1.json").doctrine);
  CHECK(fix1.pass);
  CHECK(fix1.details["has_epsilon"].get<bool>());

  Report flat = epsilon_operators(*loaded("flatdiamond.json").doctrine);
  CHECK_FALSE(flat.details["has_epsilon"].get<bool>());
  REQUIRE(flat.failed("epsilon"));
  CHECK(flat.failures[0]["witness"]["A"] == "1");
}

TEST_CASE("main theorem instances") {
  LoadedDoctrine sd = loaded("subdiamond.json");
  Report yes = verify_main_theorem(sd.doctrine, sd.selections.at("tops"));
  CHECK(yes.pass);
  CHECK(yes.details["cover"].get<bool>());

  LoadedDoctrine flat = loaded("flatdiamond.json");
  Report no = verify_main_theorem(flat.doctrine, flat.selections.at("tops"));
  CHECK(no.pass);
  CHECK_FALSE(no.details["cover"].get<bool>());
  CHECK_FALSE(no.details["reg"]["details"]["essentially_surjective"].get<bool>());

  auto fix1 = loaded("fix1.json").doctrine;
  Report trivial = verify_main_theorem(fix1, Subdoctrine::whole(*fix1));
  CHECK(trivial.pass);
  CHECK(trivial.details["cover"].get<bool>());
}
