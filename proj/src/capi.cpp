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


#include "doctrina/doctrina.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "doctrina/charax.hpp"
#include "doctrina/completions.hpp"
#include "doctrina/error.hpp"
#include "doctrina/io.hpp"
#include "doctrina/regexcat.hpp"
#include "doctrina/reglog.hpp"

using namespace doctrina;

struct dct_doctrine {
  LoadedDoctrine loaded;
  std::string hash;
  Json provenance;
};

struct dct_theory {
  Theory theory;
};

namespace {

thread_local std::string g_last_error;

template <class F>
dct_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return DCT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<dct_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("Parse: ") + e.what();
    return DCT_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DCT_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::kUsage, std::string(what) + " is NULL");
}

Json reports(std::initializer_list<Report> rs) {
  Json out = Json::array();
  for (const Report& r : rs) out.push_back(r.to_json());
  return {{"reports", out}};
}

void set_bound(Json& j, int bound) {
  if (bound < 0 || !j.is_object()) return;
  const std::string builder = j.value("builder", "");
  if (builder == "localic") j["bound"] = bound;
  if (builder == "syntactic") j["ctx_bound"] = bound;
  if (j.contains("source") && j["source"].is_object()) set_bound(j["source"], bound);
}

std::string dir_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? "." : path.substr(0, pos);
}

dct_doctrine* wrap(LoadedDoctrine d, Json provenance) {
  auto* out = new dct_doctrine{std::move(d), {}, std::move(provenance)};
  out->hash = content_hash(doctrine_to_json(*out->loaded.doctrine));
  return out;
}

Subdoctrine selection(const dct_doctrine* d, const char* text) {
  if (text == nullptr) return d->loaded.selections.at("tops");
  return load_selection(Json::parse(text), d->loaded);
}

Json rel_details(const RelationalCategory& r) {
  return {{"objects", r.cat->num_objects()}, {"arrows", r.cat->num_morphisms()}};
}

std::pair<Index, Index> parse_element(const Doctrine& p, const std::string& text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::kUsage, "element must be A:i, got '" + text + "'");
  const std::string obj = text.substr(0, colon), elem = text.substr(colon + 1);
  const FinCat& c = p.cat();
  Index a = kNone;
  for (Index i = 0; i < static_cast<Index>(c.num_objects()); ++i)
    if (c.object_name(i) == obj) a = i;
  if (a == kNone) throw Error(ErrorCode::kUsage, "no object '" + obj + "'");
  const auto& names = p.fiber(a).names;
  for (Index x = 0; x < static_cast<Index>(names.size()); ++x)
    if (names[x] == elem) return {a, x};
  char* end = nullptr;
  long x = std::strtol(elem.c_str(), &end, 10);
  if (elem.empty() || *end != '\0' || x < 0 || x >= static_cast<long>(names.size()))
    throw Error(ErrorCode::kUsage, "no element '" + elem + "' in P(" + obj + ")");
  return {a, static_cast<Index>(x)};
}

Report splitting_report(const Doctrine& p, const char* element) {
  Report rep("splitting");
  auto one = [&](Index a, Index x) {
    SplitReport s = is_splitting(p, a, x);
    ++rep.checked;
    if (s.verdict != s.prop_verdict)
      rep.fail("def-vs-prop", {{"object", p.cat().object_name(a)}, {"element", p.fiber(a).names[x]}});
    return s;
  };
  if (element != nullptr) {
    auto [a, x] = parse_element(p, element);
    SplitReport s = one(a, x);
    if (!s.verdict) rep.fail("splitting", s.witness);
    rep.details = {{"object", p.cat().object_name(a)}, {"element", p.fiber(a).names[x]},
                   {"verdict", s.verdict},            {"prop_verdict", s.prop_verdict},
                   {"witness", s.witness}};
    return rep;
  }
  Json split = Json::array();
  std::size_t total = 0;
  for (Index a = 0; a < static_cast<Index>(p.cat().num_objects()); ++a)
    for (Index x = 0; x < static_cast<Index>(p.size(a)); ++x) {
      ++total;
      if (one(a, x).verdict) split.push_back(p.cat().object_name(a) + ":" + p.fiber(a).names[x]);
    }
  rep.details = {{"elements", total}, {"splitting", split}};
  return rep;
}

}  // namespace

extern "C" {

void dct_string_free(char* s) { std::free(s); }

const char* dct_last_error(void) { return g_last_error.c_str(); }

const char* dct_version(void) { return "0.1.0"; }

dct_status dct_doctrine_load(const char* path, int bound, dct_doctrine** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    Json j = read_json_file(path);
    const std::string hash = content_hash(j);
    set_bound(j, bound);
    *out = new dct_doctrine{load_doctrine(j, dir_of(path)), hash, Json()};
  });
}

dct_status dct_doctrine_parse(const char* json, const char* dir, int bound, dct_doctrine** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    Json j = Json::parse(json);
    const std::string hash = content_hash(j);
    set_bound(j, bound);
    *out = new dct_doctrine{load_doctrine(j, dir == nullptr ? "." : dir), hash, Json()};
  });
}

void dct_doctrine_free(dct_doctrine* d) { delete d; }

dct_status dct_doctrine_info(const dct_doctrine* d, char** json) {
  return guard([&] {
    require(d, "doctrine");
    const Doctrine& p = *d->loaded.doctrine;
    std::size_t elements = 0;
    for (Index a = 0; a < static_cast<Index>(p.cat().num_objects()); ++a) elements += p.size(a);
    Json sel = Json::array();
    for (const auto& [name, s] : d->loaded.selections) sel.push_back(name);
    Json j = {{"name", p.name},          {"objects", p.cat().num_objects()}, {"arrows", p.cat().num_morphisms()},
              {"elements", elements},    {"elementary", p.elementary()},     {"existential", p.existential},
              {"hash", d->hash},         {"selections", sel}};
    *json = dup(j.dump());
  });
}

dct_status dct_doctrine_to_json(const dct_doctrine* d, char** json) {
  return guard([&] {
    require(d, "doctrine");
    Json j = doctrine_to_json(*d->loaded.doctrine);
    if (!d->provenance.is_null()) j["provenance"] = d->provenance;
    *json = dup(j.dump(1));
  });
}

dct_status dct_doctrine_dot(const dct_doctrine* d, char** dot) {
  return guard([&] {
    require(d, "doctrine");
    *dot = dup(to_dot(d->loaded.doctrine->cat(), d->loaded.doctrine->name));
  });
}

dct_status dct_doctrine_restrict(const dct_doctrine* d, const char* selection_json, dct_doctrine** out) {
  return guard([&] {
    require(d, "doctrine");
    Restriction r = restrict(*d->loaded.doctrine, selection(d, selection_json));
    LoadedDoctrine l;
    l.doctrine = std::make_shared<Doctrine>(std::move(r.doctrine));
    l.selections["tops"] = Subdoctrine::tops(*l.doctrine);
    l.selections["whole"] = Subdoctrine::whole(*l.doctrine);
    *out = wrap(std::move(l), {{"completion", "restrict"}, {"source", d->hash}});
  });
}

dct_status dct_validate(const dct_doctrine* d, const char* level, char** report) {
  return guard([&] {
    require(d, "doctrine");
    Level lv = parse_level(level == nullptr ? "primary" : level);
    *report = dup(reports({validate_doctrine(*d->loaded.doctrine, lv)}).dump());
  });
}

dct_status dct_complete(const dct_doctrine* d, const char* kind, dct_doctrine** out) {
  return guard([&] {
    require(d, "doctrine");
    require(kind, "kind");
    const std::string k = kind;
    LoadedDoctrine l;
    if (k == "exists") {
      ExistentialCompletion e = existential_completion(d->loaded.doctrine);
      l.doctrine = e.doctrine;
      l.selections["inclusion"] = inclusion_image(e);
    } else if (k == "comprehension") {
      l.doctrine = comprehension_completion(d->loaded.doctrine).doctrine;
    } else if (k == "extensional") {
      l.doctrine = extensional_reflection(d->loaded.doctrine).doctrine;
    } else if (k == "pred") {
      l.doctrine = pred_category(d->loaded.doctrine).doctrine;
    } else {
      throw Error(ErrorCode::kUsage, "unknown completion '" + k + "'");
    }
    l.selections["tops"] = Subdoctrine::tops(*l.doctrine);
    l.selections["whole"] = Subdoctrine::whole(*l.doctrine);
    *out = wrap(std::move(l), {{"completion", k}, {"source", d->hash}});
  });
}

dct_status dct_pred(const dct_doctrine* d, char** report, char** dot) {
  return guard([&] {
    require(d, "doctrine");
    PredCategory pc = pred_category(d->loaded.doctrine);
    Report r = check_pred(pc);
    r.details["objects"] = pc.cat->num_objects();
    r.details["arrows"] = pc.cat->num_morphisms();
    std::string text = reports({r}).dump();
    if (dot != nullptr) *dot = dup(to_dot(*pc.cat, "Pred"));
    *report = dup(text);
  });
}

namespace {

dct_status relational(const dct_doctrine* d, unsigned long long budget, bool exact, char** report, char** dot) {
  return guard([&] {
    require(d, "doctrine");
    RelOptions opts;
    if (budget != 0) opts.budget = budget;
    RelationalCategory r = exact ? ex_completion(d->loaded.doctrine, opts) : reg_completion(d->loaded.doctrine, opts);
    Report laws = r.laws;
    laws.details = rel_details(r);
    std::string text = reports({laws, check_regular_epis(r), check_images(r)}).dump();
    if (dot != nullptr) *dot = dup(to_dot(*r.cat, exact ? "Ex" : "Reg"));
    *report = dup(text);
  });
}

}  // namespace

dct_status dct_reg(const dct_doctrine* d, unsigned long long budget, char** report, char** dot) {
  return relational(d, budget, false, report, dot);
}

dct_status dct_ex(const dct_doctrine* d, unsigned long long budget, char** report, char** dot) {
  return relational(d, budget, true, report, dot);
}

dct_status dct_check(const dct_doctrine* d, const char* check, const char* element, char** report) {
  return guard([&] {
    require(d, "doctrine");
    require(check, "check");
    const std::string k = check;
    const Doctrine& p = *d->loaded.doctrine;
    Report r;
    if (k == "rc") {
      r = has_rc(p);
    } else if (k == "cover") {
      r = find_cover(p).report;
    } else if (k == "epsilon") {
      r = epsilon_operators(p);
    } else if (k == "splitting") {
      r = splitting_report(p, element);
    } else {
      throw Error(ErrorCode::kUsage, "unknown check '" + k + "'");
    }
    *report = dup(reports({r}).dump());
  });
}

dct_status dct_thm_main(const dct_doctrine* d, const char* selection_json, unsigned long long budget,
                        char** report) {
  return guard([&] {
    require(d, "doctrine");
    MainTheoremOptions opts;
    if (budget != 0) opts.rel.budget = budget;
    Report r = verify_main_theorem(d->loaded.doctrine, selection(d, selection_json), opts);
    *report = dup(reports({r}).dump());
  });
}

dct_status dct_theory_load(const char* path, dct_theory** out) {
  return guard([&] {
    require(path, "path");
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kParse, std::string("cannot open ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = new dct_theory{parse_theory(ss.str())};
  });
}

dct_status dct_theory_parse(const char* text, dct_theory** out) {
  return guard([&] {
    require(text, "text");
    *out = new dct_theory{parse_theory(text)};
  });
}

void dct_theory_free(dct_theory* t) { delete t; }

dct_status dct_entail(const dct_theory* t, const char* sequent, char** report) {
  return guard([&] {
    require(t, "theory");
    require(sequent, "sequent");
    Sequent s = parse_sequent(t->theory.signature, sequent);
    Entailment e = entails_empty(t->theory, s.context, s.antecedent, s.succedent);
    Report r("entail");
    r.checked = 1;
    Json witness = Json::object();
    for (const auto& [var, term] : e.witness) witness[var] = term;
    if (!e.verdict) r.fail("entailment", e.countermodel);
    r.details = {{"sequent", sequent}, {"verdict", e.verdict}, {"witness", witness}};
    *report = dup(reports({r}).dump());
  });
}

dct_status dct_materialize(const dct_theory* t, int ctx_bound, int size_bound, dct_doctrine** out) {
  return guard([&] {
    require(t, "theory");
    if (ctx_bound < 0 || size_bound < 0) throw Error(ErrorCode::kUsage, "bounds must be non-negative");
    SyntacticDoctrine s(t->theory);
    SyntacticFragment f = s.materialize(ctx_bound, size_bound);
    LoadedDoctrine l;
    l.doctrine = f.doctrine;
    l.selections["horn"] = f.horn;
    l.selections["tops"] = Subdoctrine::tops(*l.doctrine);
    l.selections["whole"] = Subdoctrine::whole(*l.doctrine);
    *out = wrap(std::move(l), {{"completion", "syntactic"}, {"ctx_bound", ctx_bound}, {"size_bound", size_bound}});
  });
}

dct_status dct_file_hash(const char* path, char** hash) {
  return guard([&] {
    require(path, "path");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kParse, std::string("cannot open ") + path);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    *hash = dup(buf);
  });
}

}  // extern "C"
