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

#include "doctrina/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctrina/completions.hpp"
#include "doctrina/reglog.hpp"

namespace doctrina {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

std::string content_hash(const Json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string dir_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? "." : path.substr(0, pos);
}

std::string resolve(const std::string& dir, const std::string& path) {
  return !path.empty() && path[0] == '/' ? path : dir + "/" + path;
}

Index object_ref(const FinCat& c, const Json& j) {
  if (j.is_number_integer()) {
    auto v = j.get<Index>();
    if (v < 0 || v >= static_cast<Index>(c.num_objects())) throw Error(ErrorCode::kMalformedTable, "object index out of range");
    return v;
  }
  Index v = c.find_object(j.get<std::string>());
  if (v == kNone) throw Error(ErrorCode::kMalformedTable, "unknown object '" + j.get<std::string>() + "'");
  return v;
}

// "A,B" where object names may themselves contain commas.
std::pair<Index, Index> pair_key(const FinCat& c, const std::string& key) {
  for (std::size_t pos = key.find(','); pos != std::string::npos; pos = key.find(',', pos + 1)) {
    Index a = c.find_object(key.substr(0, pos)), b = c.find_object(key.substr(pos + 1));
    if (a != kNone && b != kNone) return {a, b};
  }
  throw Error(ErrorCode::kMalformedTable, "product key '" + key + "' needs A,B");
}

Index morphism_ref(const FinCat& c, const std::string& name) {
  Index v = c.find_morphism(name);
  if (v == kNone) throw Error(ErrorCode::kMalformedTable, "unknown morphism '" + name + "'");
  return v;
}

Index element_ref(const MeetSL& m, const Json& j) {
  if (j.is_number_integer()) {
    auto v = j.get<Index>();
    if (v < 0 || v >= static_cast<Index>(m.size())) throw Error(ErrorCode::kMalformedTable, "element index out of range");
    return v;
  }
  Index v = m.find(j.get<std::string>());
  if (v == kNone) throw Error(ErrorCode::kMalformedTable, "unknown element '" + j.get<std::string>() + "'");
  return v;
}

std::vector<std::string> names_of(const Json& j) {
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(v.get<std::string>());
  return out;
}

std::vector<std::uint8_t> read_order(const Json& j, const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  auto idx = [&](const Json& v) -> Index {
    if (v.is_number_integer()) return v.get<Index>();
    auto it = std::find(names.begin(), names.end(), v.get<std::string>());
    if (it == names.end()) throw Error(ErrorCode::kMalformedTable, "unknown element '" + v.get<std::string>() + "'");
    return static_cast<Index>(it - names.begin());
  };
  // A 0/1 matrix when every row is n numbers, otherwise generating pairs.
  bool matrix = j.size() == n && n > 0;
  for (std::size_t i = 0; i < j.size() && matrix; ++i) matrix = j[i].is_array() && j[i].size() == n && j[i][0].is_number();
  if (matrix) {
    std::vector<std::uint8_t> order(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) order[i * n + k] = j[i][k].get<int>() != 0 ? 1 : 0;
    return order;
  }
  std::vector<std::pair<Index, Index>> pairs;
  for (const auto& pr : j) pairs.emplace_back(idx(pr[0]), idx(pr[1]));
  return order_closure(n, pairs);
}

}  // namespace

FinCat load_base(const Json& j) {
  const std::string kind = j.value("kind", "explicit");
  if (kind == "generated") {
    std::vector<GenCat::Seed> seeds;
    for (const auto& [name, elems] : j.at("seeds").items()) seeds.push_back({name, names_of(elems)});
    return GenCat(std::move(seeds)).materialize(j.value("bound", 2));
  }
  if (kind == "poset") {
    auto names = names_of(j.at("objects"));
    FinCat cat = poset_category(names, read_order(j.value("order", Json::array()), names));
    if (j.contains("prod"))
      for (const auto& [key, v] : j["prod"].items()) {
        auto [a, b] = pair_key(cat, key);
        Index o = object_ref(cat, v.at("object"));
        cat.set_product(a, b, {o, cat.find_morphism(cat.object_name(o) + "<=" + cat.object_name(a)),
                               cat.find_morphism(cat.object_name(o) + "<=" + cat.object_name(b))});
      }
    return cat;
  }
  if (kind != "explicit") throw Error(ErrorCode::kParse, "unknown base kind '" + kind + "'");
  FinCat cat;
  for (const auto& name : names_of(j.at("objects"))) cat.add_object(name);
  std::map<std::string, std::string> ids;
  if (j.contains("ids"))
    for (const auto& [obj, name] : j["ids"].items()) ids[obj] = name.get<std::string>();
  std::vector<Index> explicit_id(cat.num_objects(), kNone);
  for (const auto& [name, ends] : j.at("homs").items()) {
    Index a = object_ref(cat, ends.at(0)), b = object_ref(cat, ends.at(1));
    auto it = ids.find(cat.object_name(a));
    if (a == b && it != ids.end() && it->second == name)
      explicit_id[a] = cat.add_identity(a, name);
    else
      cat.add_morphism(name, a, b);
  }
  for (Index a = 0; a < static_cast<Index>(cat.num_objects()); ++a)
    if (explicit_id[a] == kNone) {
      if (ids.count(cat.object_name(a))) throw Error(ErrorCode::kMalformedTable, "identity of " + cat.object_name(a) + " is not a listed morphism");
      cat.add_identity(a);
    }
  if (j.contains("comp"))
    for (const auto& [key, h] : j["comp"].items()) {
      bool done = false;
      for (std::size_t pos = key.find('.'); pos != std::string::npos && !done; pos = key.find('.', pos + 1)) {
        Index g = cat.find_morphism(key.substr(0, pos)), f = cat.find_morphism(key.substr(pos + 1));
        if (g == kNone || f == kNone) continue;
        cat.set_composite(g, f, morphism_ref(cat, h.get<std::string>()));
        done = true;
      }
      if (!done) throw Error(ErrorCode::kMalformedTable, "composition entry '" + key + "' names a missing morphism");
    }
  if (j.contains("terminal")) cat.set_terminal(object_ref(cat, j["terminal"]));
  if (j.contains("prod"))
    for (const auto& [key, v] : j["prod"].items()) {
      auto [a, b] = pair_key(cat, key);
      cat.set_product(a, b,
                      {object_ref(cat, v.at("object")), morphism_ref(cat, v.at("first").get<std::string>()),
                       morphism_ref(cat, v.at("second").get<std::string>())});
    }
  return cat;
}

Json base_to_json(const FinCat& c) {
  Json j;
  j["kind"] = "explicit";
  j["objects"] = Json::array();
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a) j["objects"].push_back(c.object_name(a));
  j["homs"] = Json::object();
  j["ids"] = Json::object();
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    j["homs"][c.morphism_name(f)] = {c.object_name(c.dom(f)), c.object_name(c.cod(f))};
    if (c.is_identity(f)) j["ids"][c.object_name(c.dom(f))] = c.morphism_name(f);
  }
  j["comp"] = Json::object();
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    if (c.is_identity(f)) continue;
    for (Index e = 0; e < static_cast<Index>(c.num_objects()); ++e)
      for (Index g : c.hom(c.cod(f), e)) {
        if (c.is_identity(g)) continue;
        Index gf = c.try_compose(g, f);
        if (gf != kNone) j["comp"][c.morphism_name(g) + "." + c.morphism_name(f)] = c.morphism_name(gf);
      }
  }
  if (c.terminal() != kNone) j["terminal"] = c.object_name(c.terminal());
  j["prod"] = Json::object();
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a)
    for (Index b = 0; b < static_cast<Index>(c.num_objects()); ++b) {
      const Product* p = c.product(a, b);
      if (p == nullptr || p->first == kNone || p->second == kNone) continue;
      j["prod"][c.object_name(a) + "," + c.object_name(b)] = {
          {"object", c.object_name(p->object)}, {"first", c.morphism_name(p->first)}, {"second", c.morphism_name(p->second)}};
    }
  return j;
}

namespace {

MeetSL read_fiber(const Json& j) {
  auto names = names_of(j.at("elems"));
  MeetSL m = MeetSL::from_order(names, read_order(j.value("leq", Json::array()), names));
  if (j.contains("meet")) {
    const std::size_t n = m.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Json& v = j["meet"][a][b];
        m.meets[a * n + b] = v.is_null() ? kNone : element_ref(m, v);
      }
  }
  if (j.contains("top")) m.top = element_ref(m, j["top"]);
  return m;
}

// Table for a map between fibers: "identity" (by element name), an object
// {elem: elem}, or an array indexed by source element.
std::vector<Index> read_map(const Json& j, const MeetSL& from, const MeetSL& to, const std::string& what) {
  std::vector<Index> out(from.size(), kNone);
  if (j.is_string() && j.get<std::string>() == "identity") {
    for (Index x = 0; x < static_cast<Index>(from.size()); ++x) {
      out[x] = to.find(from.names[x]);
      if (out[x] == kNone) throw Error(ErrorCode::kMalformedTable, what + ": no element named " + from.names[x]);
    }
  } else if (j.is_array()) {
    if (j.size() != from.size()) throw Error(ErrorCode::kMalformedTable, what + ": wrong table length");
    for (Index x = 0; x < static_cast<Index>(from.size()); ++x) out[x] = j[x].is_null() ? kNone : element_ref(to, j[x]);
  } else {
    for (const auto& [k, v] : j.items()) out[element_ref(from, Json(k))] = v.is_null() ? kNone : element_ref(to, v);
    for (Index x = 0; x < static_cast<Index>(from.size()); ++x)
      if (out[x] == kNone) throw Error(ErrorCode::kMalformedTable, what + ": no image for " + from.names[x]);
  }
  return out;
}

Json base_json(const Json& j, const std::string& dir) {
  return j.is_string() ? read_json_file(resolve(dir, j.get<std::string>())) : j;
}

Doctrine read_tables(const Json& j, const std::string& dir) {
  Doctrine d;
  d.name = j.value("name", "doctrine");
  d.base = std::make_shared<FinCat>(load_base(base_json(j.at("base"), dir)));
  const FinCat& c = d.cat();
  const auto n = static_cast<Index>(c.num_objects());
  const Json& fibers = j.at("fibers");
  for (Index a = 0; a < n; ++a) {
    const std::string& name = c.object_name(a);
    if (fibers.contains(name)) d.fibers.push_back(read_fiber(fibers[name]));
    else if (fibers.contains("*")) d.fibers.push_back(read_fiber(fibers["*"]));
    else throw Error(ErrorCode::kMalformedTable, "no fiber for object " + name);
  }
  const Json reindex = j.value("reindex", Json::object());
  d.reindex.resize(c.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    const std::string& name = c.morphism_name(f);
    const MeetSL& from = d.fiber(c.cod(f));
    const MeetSL& to = d.fiber(c.dom(f));
    if (reindex.is_string()) d.reindex[f] = read_map(reindex, from, to, name);
    else if (reindex.contains(name)) d.reindex[f] = read_map(reindex[name], from, to, name);
    else if (c.is_identity(f)) d.reindex[f] = read_map(Json("identity"), from, to, name);
    else throw Error(ErrorCode::kMalformedTable, "no reindexing table for " + name);
  }
  if (j.contains("delta")) {
    d.delta.assign(n, kNone);
    for (Index a = 0; a < n; ++a) {
      const Product* aa = c.product(a, a);
      if (aa == nullptr) continue;
      const Json& v = j["delta"];
      if (v.is_string() && v.get<std::string>() == "top") d.delta[a] = d.top(aa->object);
      else if (v.contains(c.object_name(a))) d.delta[a] = element_ref(d.fiber(aa->object), v[c.object_name(a)]);
    }
  }
  if (j.contains("exists")) {
    const Json& e = j["exists"];
    for (Index pi : projections(c)) {
      const std::string& name = c.morphism_name(pi);
      const MeetSL& from = d.fiber(c.dom(pi));
      const MeetSL& to = d.fiber(c.cod(pi));
      if (e.is_string()) d.exists[pi] = read_map(e, from, to, name);
      else if (e.contains(name)) d.exists[pi] = read_map(e[name], from, to, name);
    }
    d.existential = true;
  }
  return d;
}

void add_default_selections(LoadedDoctrine& out) {
  out.selections["tops"] = Subdoctrine::tops(*out.doctrine);
  out.selections["whole"] = Subdoctrine::whole(*out.doctrine);
}

}  // namespace

LoadedDoctrine load_doctrine(const Json& j, const std::string& dir) {
  LoadedDoctrine out;
  if (j.is_string()) {
    const std::string path = resolve(dir, j.get<std::string>());
    return load_doctrine(read_json_file(path), dir_of(path));
  }
  const std::string builder = j.value("builder", "");
  if (builder.empty()) {
    out.doctrine = std::make_shared<Doctrine>(read_tables(j, dir));
  } else if (builder == "subobjects" || builder == "weak_subobjects") {
    auto cat = std::make_shared<FinCat>(load_base(base_json(j.at("base"), dir)));
    auto d = std::make_shared<Doctrine>(builder == "subobjects" ? subobjects_doctrine(cat) : weak_subobjects(cat));
    out.doctrine = d;
  } else if (builder == "localic") {
    std::vector<GenCat::Seed> seeds;
    for (const auto& [name, elems] : j.at("seeds").items()) seeds.push_back({name, names_of(elems)});
    LocalicDoctrine h(names_of(j.at("H")), GenCat(std::move(seeds)));
    out.doctrine = std::make_shared<Doctrine>(h.materialize(j.value("bound", 2)));
  } else if (builder == "syntactic") {
    std::string text;
    if (j.contains("text")) {
      text = j["text"].get<std::string>();
    } else {
      std::ifstream in(resolve(dir, j.at("theory").get<std::string>()));
      if (!in) throw Error(ErrorCode::kParse, "cannot open theory " + j.at("theory").get<std::string>());
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    SyntacticDoctrine s(parse_theory(text));
    SyntacticFragment frag = s.materialize(j.value("ctx_bound", 2), j.value("size_bound", 2));
    out.doctrine = frag.doctrine;
    out.selections["horn"] = frag.horn;
  } else if (builder == "restrict" || builder == "existential_completion") {
    LoadedDoctrine src = load_doctrine(j.at("source"), dir);
    DoctrinePtr base = src.doctrine;
    if (j.contains("select")) {
      Subdoctrine sel = load_selection(j, src);
      base = std::make_shared<Doctrine>(restrict(*src.doctrine, sel).doctrine);
    }
    if (builder == "restrict") {
      out.doctrine = base;
    } else {
      ExistentialCompletion e = existential_completion(base);
      out.doctrine = e.doctrine;
      out.selections["inclusion"] = inclusion_image(e);
    }
  } else {
    throw Error(ErrorCode::kParse, "unknown builder '" + builder + "'");
  }
  if (j.contains("name") && !builder.empty()) {
    auto named = std::make_shared<Doctrine>(*out.doctrine);
    named->name = j["name"].get<std::string>();
    out.doctrine = named;
  }
  add_default_selections(out);
  return out;
}

LoadedDoctrine load_doctrine_file(const std::string& path) {
  return load_doctrine(read_json_file(path), dir_of(path));
}

Json doctrine_to_json(const Doctrine& p) {
  const FinCat& c = p.cat();
  Json j;
  j["name"] = p.name;
  j["base"] = base_to_json(c);
  j["fibers"] = Json::object();
  auto elem_json = [&](Index a, Index x) { return x == kNone ? Json() : Json(p.fiber(a).names[x]); };
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a) {
    const MeetSL& m = p.fiber(a);
    Json f;
    f["elems"] = m.names;
    Json leq = Json::array(), meet = Json::array();
    for (Index x = 0; x < static_cast<Index>(m.size()); ++x) {
      Json row = Json::array(), mrow = Json::array();
      for (Index y = 0; y < static_cast<Index>(m.size()); ++y) {
        row.push_back(m.leq(x, y) ? 1 : 0);
        mrow.push_back(elem_json(a, m.meet(x, y)));
      }
      leq.push_back(row);
      meet.push_back(mrow);
    }
    f["leq"] = leq;
    f["meet"] = meet;
    f["top"] = elem_json(a, m.top);
    j["fibers"][c.object_name(a)] = f;
  }
  j["reindex"] = Json::object();
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    Json t = Json::array();
    for (Index x : p.reindex[f]) t.push_back(elem_json(c.dom(f), x));
    j["reindex"][c.morphism_name(f)] = t;
  }
  if (p.elementary()) {
    j["delta"] = Json::object();
    for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a) {
      const Product* aa = c.product(a, a);
      if (aa != nullptr && p.delta[a] != kNone) j["delta"][c.object_name(a)] = elem_json(aa->object, p.delta[a]);
    }
  }
  if (p.existential) {
    j["exists"] = Json::object();
    for (Index pi : projections(c)) {
      auto it = p.exists.find(pi);
      if (it == p.exists.end()) continue;
      Json t = Json::array();
      for (Index x : it->second) t.push_back(elem_json(c.cod(pi), x));
      j["exists"][c.morphism_name(pi)] = t;
    }
  }
  return j;
}

Subdoctrine load_selection(const Json& j, const LoadedDoctrine& p) {
  const Json& s = j.at("select");
  if (s.is_string()) {
    auto it = p.selections.find(s.get<std::string>());
    if (it == p.selections.end()) throw Error(ErrorCode::kParse, "no selection named '" + s.get<std::string>() + "'");
    return it->second;
  }
  const Doctrine& d = *p.doctrine;
  Subdoctrine out;
  out.elements.resize(d.cat().num_objects());
  for (const auto& [obj, elems] : s.items()) {
    Index a = object_ref(d.cat(), Json(obj));
    for (const auto& e : elems) out.elements[a].push_back(element_ref(d.fiber(a), e));
    std::sort(out.elements[a].begin(), out.elements[a].end());
    out.elements[a].erase(std::unique(out.elements[a].begin(), out.elements[a].end()), out.elements[a].end());
  }
  return out;
}

std::string to_dot(const FinCat& c, const std::string& name) {
  std::ostringstream out;
  auto quote = [](const std::string& s) {
    std::string r = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') r += '\\';
      r += ch;
    }
    return r + "\"";
  };
  out << "digraph " << quote(name) << " {\n";
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a)
    out << "  n" << a << " [label=" << quote(c.object_name(a)) << "];\n";
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f)
    if (!c.is_identity(f))
      out << "  n" << c.dom(f) << " -> n" << c.cod(f) << " [label=" << quote(c.morphism_name(f)) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace doctrina
