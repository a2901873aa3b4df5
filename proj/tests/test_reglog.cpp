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

#include <fstream>
#include <functional>
#include <sstream>

#include "doctest.h"
#include "doctrina/io.hpp"
#include "doctrina/reglog.hpp"
#include "oracles.hpp"

using namespace doctrina;

namespace {

Theory sigr() {
  std::ifstream in(oracle::fixture("sigr.theory"));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_theory(ss.str());
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kUsage;
}

Entailment entail(const Theory& t, const std::string& text) {
  Sequent s = parse_sequent(t.signature, text);
  return entails_empty(t, s.context, s.antecedent, s.succedent);
}

}  // namespace

TEST_CASE("theory and query parsing") {
  Theory t = sigr();
  CHECK(t.signature.relations.size() == 1);
  CHECK(t.signature.constants.size() == 1);
  auto [ctx, phi] = parse_query(t.signature, "R(x,y)");
  REQUIRE(ctx.size() == 2);
  CHECK(ctx[0].first == "x");
  CHECK(ctx[1].second == t.signature.find_sort("s"));
}

TEST_CASE("parse errors") {
  Theory t = sigr();
  CHECK(code_of([&] { parse_query(t.signature, "S(y)"); }) == ErrorCode::kSortError);
  CHECK(code_of([&] { parse_sequent(t.signature, "x:s | R(x,x |- R(x,x)"); }) == ErrorCode::kSyntaxError);
  CHECK(code_of([&] { parse_theory("sort s\nrel R : s q\n"); }) == ErrorCode::kSortError);
}

TEST_CASE("function symbols and axioms are refused by the decision procedure") {
  Theory f = parse_theory("sort s\nrel R : s s\nfun g : s -> s\n");
  CHECK(code_of([&] { entail(f, "x:s | R(g(x),x) |- R(x,x)"); }) == ErrorCode::kUnsupportedFunctionSymbol);
  Theory a = parse_theory("sort s\nrel R : s s\naxiom x:s | R(x,x) |- R(x,x)\n");
  CHECK(code_of([&] { entail(a, "x:s | R(x,x) |- R(x,x)"); }) == ErrorCode::kUnsupportedTheory);
}

TEST_CASE("normalization") {
  Theory t = sigr();
  const Signature& sig = t.signature;
  auto norm = [&](const std::string& text) {
    auto [ctx, phi] = parse_query(sig, text);
    return normalize(sig, ctx, phi);
  };
  CanonicalQuery a = norm("T & R(x,y)");
  CHECK(a.num_bound() == 0);
  CHECK(a.atoms.size() == 1);
  CanonicalQuery b = norm("exists y:s. (R(x,y) & exists z:s. R(y,z))");
  CHECK(b.num_bound() == 2);
  CHECK(b.atoms.size() == 2);
  CanonicalQuery c = norm("exists y:s. (x = y & R(y,y))");
  CHECK(c.num_bound() == 0);
  REQUIRE(c.atoms.size() == 1);
  CHECK(c.atoms[0].args[0] == c.atoms[0].args[1]);
}

TEST_CASE("entailment") {
  Theory t = sigr();
  Entailment yes = entail(t, "x:s | R(x,x) |- exists y:s. R(x,y)");
  CHECK(yes.verdict);
  REQUIRE(yes.witness.size() == 1);
  CHECK(yes.witness[0] == std::pair<std::string, std::string>{"y", "x"});

  Entailment no = entail(t, "x:s | exists y:s. R(x,y) |- R(x,x)");
  CHECK_FALSE(no.verdict);
  REQUIRE(no.countermodel["relations"]["R"].size() == 1);
  CHECK(no.countermodel["relations"]["R"][0][0] == "x");
  CHECK(no.countermodel["relations"]["R"][0][1] != "x");

  Theory bare = parse_theory("sort s\nrel R : s s\n");
  CHECK_FALSE(entail(bare, " | T |- exists y:s. y = y").verdict);
  CHECK(entail(t, " | T |- exists y:s. y = y").verdict);
}

TEST_CASE("core removes redundant bound variables") {
  Theory t = sigr();
  auto [ctx, phi] = parse_query(t.signature, "exists y:s. exists z:s. (R(x,y) & R(x,z))");
  CanonicalQuery q = normalize(t.signature, ctx, phi);
  CanonicalQuery k = core(q);
  CHECK(k.num_bound() == 1);
  // Oracle: both directions of homomorphism exist between a query and its core.
  CHECK(find_homomorphism(q, k).has_value());
  CHECK(find_homomorphism(k, q).has_value());
}

TEST_CASE("entailment agrees with bounded proof search") {
  Theory t = sigr();
  oracle::SequentGenerator gen(t.signature, 7);
  for (int i = 0; i < 50; ++i) {
    std::string text = gen.next();
    Sequent s = parse_sequent(t.signature, text);
    oracle::ProofSearch search(t.signature, s.context);
    CHECK_MESSAGE(entails_empty(t, s.context, s.antecedent, s.succedent).verdict ==
                      search.prove(s.antecedent, s.succedent),
                  text);
  }
}
