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


// Acceptance run: one line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctrina/charax.hpp"
#include "doctrina/completions.hpp"
#include "doctrina/io.hpp"
#include "doctrina/regexcat.hpp"
#include "doctrina/reglog.hpp"
#include "oracles.hpp"

using namespace doctrina;
using oracle::fixture;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Outcome&)> run;
};

bool flag(const Report& r, const char* key) { return r.details.contains(key) && r.details[key].get<bool>(); }

DoctrinePtr loaded(const std::string& name) { return load_doctrine_file(fixture(name)).doctrine; }

DoctrinePtr restricted(const std::string& name, const std::string& selection) {
  LoadedDoctrine d = load_doctrine_file(fixture(name));
  return std::make_shared<Doctrine>(restrict(*d.doctrine, d.selections.at(selection)).doctrine);
}

std::string count(std::size_t n, const char* what) { return std::to_string(n) + " " + what; }

// The P′ instances whose existential completions are checked.
std::vector<std::pair<std::string, DoctrinePtr>> primaries() {
  return {{"FIX-1", loaded("fix1.json")},
          {"tops(Sub_Diamond)", restricted("subdiamond.json", "tops")},
          {"Horn(SigR)", restricted("sigr.json", "horn")}};
}

void structure_suite(Outcome& out) {
  for (const char* name : {"fix1.json", "subdiamond.json", "flatdiamond.json", "fix3.json", "sigr.json"}) {
    auto p = loaded(name);
    Report r = validate_doctrine(*p, Level::kExistential);
    out.expect(r.pass, std::string(name) + " validates");
    out.note(p->name + " " + count(r.checked, "checked"));
  }
  Report bad = validate_doctrine(*loaded("fix1_bad_delta.json"), Level::kExistential);
  out.expect(!bad.pass && bad.failed("elementary-diagonal") && bad.failures[0]["witness"]["object"] == "*",
             "mutated delta fails at object *");
  Report broken = validate_base(load_base(read_json_file(fixture("diamond_broken.json"))));
  out.expect(!broken.pass && broken.failed("product-ump") &&
                 broken.failures[0]["witness"]["pair"] == Json::array({"a", "b"}),
             "broken product fails at (a,b)");
  out.note("mutations localized");
}

void completion_laws(Outcome& out) {
  for (const auto& [name, p] : primaries()) {
    ExistentialCompletion e = existential_completion(p);
    const Doctrine& d = *e.doctrine;
    out.expect(validate_doctrine(d, Level::kElementary).pass, name + "^E elementary");
    out.expect(validate_doctrine(d, Level::kExistential).pass, name + "^E existential");
    Report rc = has_rc(d);
    out.expect(rc.pass && flag(rc, "verdict"), name + "^E has RC");
    CoverResult c = find_cover(d);
    out.expect(flag(c.report, "enough_free"), name + "^E enough free");
    Subdoctrine image = inclusion_image(e);
    out.expect(c.cover.has_value() && c.cover->elements == image.elements, name + "^E cover is the inclusion image");
    // Oracle: the free elements are exactly the image.
    bool same = true;
    for (Index a = 0; a < static_cast<Index>(d.cat().num_objects()); ++a)
      for (Index x = 0; x < static_cast<Index>(d.size(a)); ++x) same = same && oracle::is_free(d, a, x) == image.contains(a, x);
    out.expect(same, name + "^E oracle free set equals image");
    std::size_t n = 0;
    for (const auto& v : image.elements) n += v.size();
    out.note(name + "^E " + count(n, "free"));
  }
}

void characterization(Outcome& out) {
  std::vector<std::pair<std::string, DoctrinePtr>> all;
  for (const char* name : {"fix1.json", "subdiamond.json", "flatdiamond.json", "fix3.json", "sigr.json"})
    all.emplace_back(name, loaded(name));
  for (const auto& [name, p] : primaries()) all.emplace_back(name + "^E", existential_completion(p).doctrine);
  std::size_t elements = 0;
  for (const auto& [name, p] : all) {
    bool agree = true;
    for (Index a = 0; a < static_cast<Index>(p->cat().num_objects()); ++a)
      for (Index x = 0; x < static_cast<Index>(p->size(a)); ++x) {
        ++elements;
        SplitReport s = is_splitting(*p, a, x);
        bool def = oracle::splits(*p, a, x, true), prop = oracle::splits(*p, a, x, false);
        agree = agree && s.verdict == s.prop_verdict && s.verdict == def && def == prop;
      }
    out.expect(agree, name + " Def and Prop splitting agree");
  }
  out.note(count(elements, "elements"));
  std::size_t pairs = 0;
  auto pair_check = [&](const std::string& name, const Doctrine& p, const Subdoctrine& s) {
    Report r = check_cover(p, s);
    ++pairs;
    out.expect(r.details["cover"] == r.details["relative_cover"], name + " relative cover agrees");
  };
  for (const char* name : {"fix1.json", "subdiamond.json", "flatdiamond.json", "sigr.json"}) {
    LoadedDoctrine d = load_doctrine_file(fixture(name));
    for (const auto& [sel, s] : d.selections) pair_check(std::string(name) + "/" + sel, *d.doctrine, s);
  }
  for (const auto& [name, p] : primaries()) {
    ExistentialCompletion e = existential_completion(p);
    pair_check(name + "^E/inclusion", *e.doctrine, inclusion_image(e));
  }
  out.note(count(pairs, "pairs"));
}

bool equivalence(const Json& r) {
  return r["details"]["faithful"].get<bool>() && r["details"]["full"].get<bool>() &&
         r["details"]["essentially_surjective"].get<bool>();
}

void positive_theorem(Outcome& out) {
  LoadedDoctrine sd = load_doctrine_file(fixture("subdiamond.json"));
  Report r = verify_main_theorem(sd.doctrine, sd.selections.at("tops"));
  out.expect(r.pass && flag(r, "cover"), "Sub_Diamond/tops cover");
  out.expect(equivalence(r.details["reg"]) && equivalence(r.details["ex"]), "Sub_Diamond/tops G^reg and G^ex equivalences");
  out.note("Sub_Diamond/tops ok");
  // Syntactic instance: (Horn)^E of the materialized SigR.
  for (int ctx_bound : {2, 0}) {
    Json input = {{"builder", "existential_completion"},
                 {"source", {{"builder", "syntactic"}, {"theory", "sigr.theory"}, {"ctx_bound", ctx_bound}, {"size_bound", 2}}},
                 {"select", "horn"}};
    const std::string label = "SigR(" + std::to_string(ctx_bound) + ",2)";
    try {
      LoadedDoctrine h = load_doctrine(input, DOCTRINA_FIXTURES);
      Report t = verify_main_theorem(h.doctrine, h.selections.at("inclusion"));
      bool ok = t.pass && flag(t, "cover") && equivalence(t.details["reg"]) && equivalence(t.details["ex"]);
      out.expect(ok, label + " Horn^E main theorem");
      if (ok) out.note(label + " ok (" + count(h.doctrine->cat().num_objects(), "contexts") + ")");
    } catch (const Error& e) {
      out.expect(false, label + " Horn^E main theorem: " + e.what());
    }
  }
}

void negative_theorem(Outcome& out) {
  LoadedDoctrine fd = load_doctrine_file(fixture("flatdiamond.json"));
  Report r = verify_main_theorem(fd.doctrine, fd.selections.at("tops"));
  out.expect(r.pass, "biconditional consistent");
  out.expect(!flag(r, "cover") && !r.details["rc"].get<bool>(), "cover = no and RC = false");
  Report rc = has_rc(*fd.doctrine);
  bool named_witness = false;
  for (const auto& w : rc.details["counterexamples"]) named_witness = named_witness || (w["A"] == "1" && w["B"] == "a");
  out.expect(!rc.failures.empty() && named_witness, "RC witness (1,a) present");
  for (const char* side : {"reg", "ex"}) {
    const Json& e = r.details[side];
    std::string object;
    for (const auto& f : e.value("witness", Json::array()))
      if (f["law"] == "essentially-surjective") object = f["witness"]["object"].get<std::string>();
    out.expect(!e["details"]["essentially_surjective"].get<bool>() && !object.empty(),
               std::string(side) + " essential surjectivity fails with a witness");
    out.note(std::string(side) + " uncovered " + object);
  }
}

void epsilon_corollary(Outcome& out) {
  Json j = read_json_file(fixture("fix3.json"));
  std::vector<GenCat::Seed> seeds;
  for (const auto& [name, elems] : j["seeds"].items()) seeds.push_back({name, elems.get<std::vector<std::string>>()});
  LocalicDoctrine h(j["H"].get<std::vector<std::string>>(), GenCat(seeds));
  const std::size_t bound = j["bound"].get<std::size_t>();
  Report r = localic_epsilon(h, bound);
  out.expect(r.pass && r.checked > 0, "localic epsilon on FIX-3");
  out.note(count(r.checked, "valuations"));
  // Oracle: ε(a) is the least b with α(a,b) maximal; P_⟨id,ε⟩α is then the join.
  const auto words = h.base().enumerate_objects(bound);
  const int levels = static_cast<int>(h.levels().size());
  bool recipe = true;
  for (const auto& a : words)
    for (const auto& b : words) {
      if (a.size() + b.size() > bound) continue;
      GenCat::Word ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      const std::size_t na = h.base().cardinality(a), nb = h.base().cardinality(b), nab = na * nb;
      std::size_t total = 1;
      for (std::size_t i = 0; i < nab; ++i) total *= levels;
      for (std::size_t idx = 0; idx < total && idx < 4096; ++idx) {
        std::vector<int> alpha(nab);
        for (std::size_t i = 0, v = idx; i < nab; ++i, v /= levels) alpha[i] = static_cast<int>(v % levels);
        auto eps = h.epsilon(a, b, alpha);
        for (std::size_t i = 0; i < na; ++i) {
          int best = 0;
          for (std::size_t k = 1; k < nb; ++k)
            if (alpha[i * nb + k] > alpha[i * nb + best]) best = static_cast<int>(k);
          recipe = recipe && eps[i] == best;
        }
      }
    }
  out.expect(recipe, "argmax recipe matches");
  // α(x) = m, α(y) = 0 over 1×B: ε picks x and ∃ gives m.
  const GenCat::Word one, seed{0};
  std::vector<int> alpha{1, 0};
  out.expect(h.epsilon(one, seed, alpha) == std::vector<int>{0}, "example epsilon = x");
  out.expect(h.exists_first(one, seed, alpha) == std::vector<int>{1}, "example exists = m");
  Report flat = epsilon_operators(*loaded("flatdiamond.json"));
  out.expect(!flag(flat, "has_epsilon") && !flat.failed("theorem-agrees"), "FlatDiamond has no epsilon");
  std::size_t fixtures = 0;
  for (const char* name : {"fix1.json", "subdiamond.json", "flatdiamond.json", "fix3.json", "sigr.json"}) {
    Report e = epsilon_operators(*loaded(name));
    ++fixtures;
    out.expect(e.details["has_epsilon"] == e.details["whole_cover"], std::string(name) + " epsilon iff whole cover");
  }
  for (const auto& [name, p] : primaries()) {
    Report e = epsilon_operators(*existential_completion(p).doctrine);
    ++fixtures;
    out.expect(e.details["has_epsilon"] == e.details["whole_cover"], name + "^E epsilon iff whole cover");
  }
  out.note(count(fixtures, "doctrines"));
}

void regular_internals(Outcome& out) {
  for (const char* name : {"fix1.json", "subdiamond.json"}) {
    RelationalCategory reg = reg_completion(loaded(name));
    Report epis = check_regular_epis(reg), images = check_images(reg);
    out.expect(reg.laws.pass, std::string(name) + " Reg laws");
    out.expect(epis.pass, std::string(name) + " regular epis agree");
    out.expect(images.pass, std::string(name) + " images");
    out.note(std::string(name) + " " + count(reg.cat->num_morphisms(), "arrows"));
  }
}

void projectivity(Outcome& out) {
  std::vector<std::pair<std::string, DoctrinePtr>> instances = {
      {"FIX-1", loaded("fix1.json")},
      {"tops(Sub_Diamond)", restricted("subdiamond.json", "tops")},
      {"tops(FlatDiamond)", restricted("flatdiamond.json", "tops")}};
  for (const auto& [name, p] : instances) {
    ExistentialCompletion e = existential_completion(p);
    RelationalCategory reg = reg_completion(e.doctrine);
    Restriction sub = restrict(*e.doctrine, inclusion_image(e));
    PredCategory pred = pred_category(std::make_shared<Doctrine>(sub.doctrine));
    GraphFunctor g = graph_functor(reg, pred, sub);
    Report r = check_projectives(reg, g, *e.doctrine);
    out.expect(g.report.pass, name + " graph functor");
    out.expect(r.pass, name + " projectives, covers and embeddings");
    out.note(name + " " + count(reg.cat->num_objects(), "objects"));
  }
}

void exact_coherence(Outcome& out) {
  for (const char* name : {"fix1.json", "subdiamond.json"}) {
    auto p = loaded(name);
    RelationalCategory ex = ex_completion(p), reg = reg_completion(p);
    RelationalCategory er = ex_reg_crosscheck(reg.cat);
    Functor f = ex_comparison(ex, reg, er);
    out.expect(check_functor(f).pass, std::string(name) + " comparison functor");
    Report e = check_equivalence(f);
    out.expect(e.pass && equivalence(e.to_json()), std::string(name) + " Ex(P) ~ ex/reg(Reg(P))");
  }
  auto c = std::make_shared<FinCat>(load_base(read_json_file(fixture("chain2.json"))));
  RelationalCategory el = ex_lex(c), rl = reg_lex(c), er = ex_reg_crosscheck(rl.cat);
  Functor f = ex_comparison(el, rl, er);
  Report e = check_equivalence(f);
  out.expect(check_functor(f).pass && equivalence(e.to_json()), "ex/lex(2-chain) ~ ex/reg(reg/lex(2-chain))");
  out.note("2-chain " + count(el.cat->num_objects(), "objects"));
}

void logic_engine(Outcome& out) {
  const char* two_sorted = "sort s\nsort t\nrel R : s s\nrel P : t\nrel Q : s t\nconst c : s\nconst d : t\n";
  std::ifstream in(fixture("sigr.theory"));
  std::stringstream ss;
  ss << in.rdbuf();
  std::size_t agree = 0, total = 0, positive = 0, rechecked = 0;
  double worst = 0;
  for (const std::string& text : {ss.str(), std::string(two_sorted)}) {
    Theory th = parse_theory(text);
    oracle::SequentGenerator gen(th.signature, 20261016u + static_cast<unsigned>(total));
    for (int i = 0; i < 100; ++i) {
      const std::string q = gen.next(4, 3);
      Sequent s = parse_sequent(th.signature, q);
      auto t0 = std::chrono::steady_clock::now();
      Entailment e = entails_empty(th, s.context, s.antecedent, s.succedent);
      worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      oracle::ProofSearch search(th.signature, s.context);
      bool expected = search.prove(s.antecedent, s.succedent);
      ++total;
      if (e.verdict == expected) ++agree;
      else out.note("disagree: " + q);
      if (e.verdict) {
        ++positive;
        std::map<std::string, std::string> inst(e.witness.begin(), e.witness.end());
        if (search.check(s.succedent, inst)) ++rechecked;
        else out.note("witness fails: " + q);
      }
    }
  }
  out.expect(agree == total, "oracle agreement");
  out.expect(rechecked == positive, "witnesses re-verify");
  out.expect(worst < 1.0, "each query under 1 s");
  out.note(std::to_string(agree) + "/" + std::to_string(total) + " agree, " + std::to_string(positive) + " positive");
  LoadedDoctrine sigr = load_doctrine_file(fixture("sigr.json"));
  const Doctrine& p = *sigr.doctrine;
  const Subdoctrine& horn = sigr.selections.at("horn");
  std::size_t n = 0;
  bool all = true;
  for (Index a = 0; a < static_cast<Index>(horn.elements.size()); ++a)
    for (Index x : horn.elements[a]) {
      ++n;
      all = all && is_splitting(p, a, x).verdict && oracle::splits(p, a, x);
    }
  out.expect(all, "Horn classes splitting");
  out.note(count(n, "Horn classes"));
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "structure suite", 10, structure_suite},
      {2, "completion laws", 60, completion_laws},
      {3, "characterization equivalences", 60, characterization},
      {4, "main theorem, positive", 300, positive_theorem},
      {5, "main theorem, negative", 60, negative_theorem},
      {6, "epsilon corollary", 60, epsilon_corollary},
      {7, "regular-category internals", 120, regular_internals},
      {8, "projectivity", 120, projectivity},
      {9, "exact-completion coherence", 300, exact_coherence},
      {10, "logic engine", 60, logic_engine},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.expect(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.expect(s < c.limit_s, "time limit");
    std::string notes;
    for (const auto& n : out.notes) notes += (notes.empty() ? "" : "; ") + n;
    std::printf("criterion %d %s: %s (%.2f s, limit %.0f s) %s\n", c.id, c.name, out.pass ? "PASS" : "FAIL", s,
                c.limit_s, notes.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
