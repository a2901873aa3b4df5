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

#include "doctrina/core.hpp"

#include <algorithm>

namespace doctrina {

namespace {
const std::vector<Index> kEmptyHom;
}  // namespace

FinCat::FinCat(const FinCat& other)
    : object_names_(other.object_names_),
      morphism_names_(other.morphism_names_),
      dom_(other.dom_),
      cod_(other.cod_),
      identity_(other.identity_),
      homs_(other.homs_),
      composites_(other.composites_),
      products_(other.products_),
      object_index_(other.object_index_),
      morphism_index_(other.morphism_index_),
      composer_(other.composer_),
      terminal_(other.terminal_) {}

FinCat& FinCat::operator=(const FinCat& other) {
  if (this != &other) {
    FinCat copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Index FinCat::add_object(std::string name) {
  auto id = static_cast<Index>(object_names_.size());
  object_index_.emplace(name, id);
  object_names_.push_back(std::move(name));
  identity_.push_back(kNone);
  return id;
}

Index FinCat::add_morphism(std::string name, Index dom, Index cod) {
  if (dom < 0 || cod < 0 || dom >= static_cast<Index>(num_objects()) ||
      cod >= static_cast<Index>(num_objects()))
    throw Error(ErrorCode::kMalformedTable, "morphism '" + name + "' has an unknown endpoint");
  auto id = static_cast<Index>(dom_.size());
  morphism_index_.emplace(name, id);
  morphism_names_.push_back(std::move(name));
  dom_.push_back(dom);
  cod_.push_back(cod);
  homs_[pack(dom, cod)].push_back(id);
  return id;
}

Index FinCat::add_identity(Index obj, std::string name) {
  if (name.empty()) name = "id_" + object_name(obj);
  Index id = add_morphism(std::move(name), obj, obj);
  identity_[obj] = id;
  return id;
}

void FinCat::set_composite(Index g, Index f, Index gf) { composites_[pack(g, f)] = gf; }

void FinCat::set_product(Index a, Index b, Product p) { products_[pack(a, b)] = p; }

Index FinCat::find_object(const std::string& name) const {
  auto it = object_index_.find(name);
  return it == object_index_.end() ? kNone : it->second;
}

Index FinCat::find_morphism(const std::string& name) const {
  auto it = morphism_index_.find(name);
  return it == morphism_index_.end() ? kNone : it->second;
}

const std::vector<Index>& FinCat::hom(Index a, Index b) const {
  auto it = homs_.find(pack(a, b));
  return it == homs_.end() ? kEmptyHom : it->second;
}

Index FinCat::try_compose(Index g, Index f) const {
  if (f < 0 || g < 0 || cod_[f] != dom_[g]) return kNone;
  if (identity_[dom_[g]] == g) return f;
  if (identity_[dom_[f]] == f) return g;
  auto it = composites_.find(pack(g, f));
  if (it != composites_.end()) return it->second;
  if (composer_) return composer_(g, f);
  return kNone;
}

Index FinCat::compose(Index g, Index f) const {
  if (cod_[f] != dom_[g])
    throw Error(ErrorCode::kMalformedTable,
                "cannot compose " + morphism_name(g) + " after " + morphism_name(f));
  Index gf = try_compose(g, f);
  if (gf == kNone)
    throw Error(ErrorCode::kMalformedTable,
                "no composite recorded for " + morphism_name(g) + " after " + morphism_name(f));
  return gf;
}

Index FinCat::bang(Index a) const {
  if (terminal_ == kNone) return kNone;
  const auto& h = hom(a, terminal_);
  return h.empty() ? kNone : h.front();
}

const Product* FinCat::product(Index a, Index b) const {
  auto it = products_.find(pack(a, b));
  return it == products_.end() ? nullptr : &it->second;
}

Index FinCat::pair(Index f, Index g) const {
  if (f < 0 || g < 0 || dom_[f] != dom_[g]) return kNone;
  const Product* p = product(cod_[f], cod_[g]);
  if (p == nullptr || p->first == kNone || p->second == kNone) return kNone;
  {
    std::lock_guard<std::mutex> lock(*pair_mutex_);
    auto it = pair_cache_.find(pack(f, g));
    if (it != pair_cache_.end()) return it->second;
  }
  Index found = kNone;
  for (Index h : hom(dom_[f], p->object)) {
    if (try_compose(p->first, h) == f && try_compose(p->second, h) == g) {
      found = h;
      break;
    }
  }
  std::lock_guard<std::mutex> lock(*pair_mutex_);
  pair_cache_.emplace(pack(f, g), found);
  return found;
}

Index FinCat::cross(Index f, Index g) const {
  const Product* p = product(dom_[f], dom_[g]);
  if (p == nullptr || p->first == kNone || p->second == kNone) return kNone;
  Index a = try_compose(f, p->first);
  Index b = try_compose(g, p->second);
  return pair(a, b);
}

Index FinCat::diagonal(Index a) const { return pair(identity(a), identity(a)); }

std::vector<std::uint8_t> order_closure(std::size_t n, const std::vector<std::pair<Index, Index>>& pairs) {
  std::vector<std::uint8_t> order(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) order[i * n + i] = 1;
  for (auto [a, b] : pairs) order[static_cast<std::size_t>(a) * n + b] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (order[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (order[k * n + j]) order[i * n + j] = 1;
  return order;
}

FinCat poset_category(const std::vector<std::string>& names, const std::vector<std::uint8_t>& order) {
  const std::size_t n = names.size();
  FinCat cat;
  for (const auto& name : names) cat.add_object(name);
  auto arrows = std::make_shared<std::vector<Index>>(n * n, kNone);
  for (std::size_t i = 0; i < n; ++i) {
    (*arrows)[i * n + i] = cat.add_identity(static_cast<Index>(i), names[i] + "<=" + names[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && order[i * n + j])
        (*arrows)[i * n + j] =
            cat.add_morphism(names[i] + "<=" + names[j], static_cast<Index>(i), static_cast<Index>(j));
  auto ends = std::make_shared<std::vector<std::pair<Index, Index>>>(cat.num_morphisms());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((*arrows)[i * n + j] != kNone)
        (*ends)[(*arrows)[i * n + j]] = {static_cast<Index>(i), static_cast<Index>(j)};
  cat.set_composer([arrows, ends, n](Index g, Index f) {
    return (*arrows)[static_cast<std::size_t>((*ends)[f].first) * n + (*ends)[g].second];
  });
  auto leq = [&](std::size_t i, std::size_t j) { return order[i * n + j] != 0; };
  for (std::size_t i = 0; i < n; ++i) {
    bool is_top = true;
    for (std::size_t j = 0; j < n; ++j) is_top = is_top && leq(j, i);
    if (is_top) cat.set_terminal(static_cast<Index>(i));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t m = 0; m < n; ++m) {
        if (!leq(m, a) || !leq(m, b)) continue;
        bool greatest = true;
        for (std::size_t x = 0; x < n && greatest; ++x)
          if (leq(x, a) && leq(x, b) && !leq(x, m)) greatest = false;
        if (greatest) {
          cat.set_product(static_cast<Index>(a), static_cast<Index>(b),
                          {static_cast<Index>(m), (*arrows)[m * n + a], (*arrows)[m * n + b]});
          break;
        }
      }
    }
  return cat;
}

Index MeetSL::find(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? kNone : static_cast<Index>(it - names.begin());
}

MeetSL MeetSL::from_order(std::vector<std::string> names, std::vector<std::uint8_t> order) {
  MeetSL m;
  m.names = std::move(names);
  m.order = std::move(order);
  const std::size_t n = m.size();
  m.meets.assign(n * n, kNone);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        auto ci = static_cast<Index>(c);
        if (!m.leq(ci, static_cast<Index>(a)) || !m.leq(ci, static_cast<Index>(b))) continue;
        bool greatest = true;
        for (std::size_t x = 0; x < n && greatest; ++x) {
          auto xi = static_cast<Index>(x);
          if (m.leq(xi, static_cast<Index>(a)) && m.leq(xi, static_cast<Index>(b)) && !m.leq(xi, ci))
            greatest = false;
        }
        if (greatest) {
          m.meets[a * n + b] = ci;
          break;
        }
      }
  for (std::size_t t = 0; t < n; ++t) {
    bool is_top = true;
    for (std::size_t x = 0; x < n && is_top; ++x) is_top = m.leq(static_cast<Index>(x), static_cast<Index>(t));
    if (is_top) m.top = static_cast<Index>(t);
  }
  return m;
}

Report MeetSL::validate() const {
  Report r("meet-semilattice");
  const auto n = static_cast<Index>(size());
  for (Index a = 0; a < n; ++a) {
    ++r.checked;
    if (!leq(a, a)) r.fail("reflexive", {{"element", names[a]}});
    for (Index b = 0; b < n; ++b) {
      if (a != b && leq(a, b) && leq(b, a)) r.fail("antisymmetric", {{"pair", {names[a], names[b]}}});
      for (Index c = 0; c < n; ++c)
        if (leq(a, b) && leq(b, c) && !leq(a, c))
          r.fail("transitive", {{"triple", {names[a], names[b], names[c]}}});
    }
  }
  if (top == kNone) {
    r.fail("top", {{"reason", "no top element"}});
  } else {
    for (Index a = 0; a < n; ++a)
      if (!leq(a, top)) r.fail("top", {{"element", names[a]}});
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      Index m = meet(a, b);
      if (m == kNone) {
        if (leq(a, b) || leq(b, a)) r.fail("meet", {{"pair", {names[a], names[b]}}, {"reason", "comparable pair without meet"}});
        ++r.skipped;
        continue;
      }
      ++r.checked;
      bool ok = leq(m, a) && leq(m, b);
      for (Index x = 0; x < n && ok; ++x)
        if (leq(x, a) && leq(x, b) && !leq(x, m)) ok = false;
      if (!ok) r.fail("meet", {{"pair", {names[a], names[b]}}, {"claimed", names[m]}});
    }
  return r;
}

PosetReflection poset_reflection(std::size_t n, const std::function<bool(Index, Index)>& leq) {
  std::vector<std::uint8_t> rel(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rel[i * n + j] = leq(static_cast<Index>(i), static_cast<Index>(j)) ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rel[i * n + i])
      throw Error(ErrorCode::kNotPreorder, "reflexivity fails at element " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j)
      if (rel[i * n + j])
        for (std::size_t k = 0; k < n; ++k)
          if (rel[j * n + k] && !rel[i * n + k])
            throw Error(ErrorCode::kNotPreorder, "transitivity fails at (" + std::to_string(i) + "," +
                                                     std::to_string(j) + "," + std::to_string(k) + ")");
  }
  PosetReflection r;
  r.class_of.assign(n, kNone);
  for (std::size_t i = 0; i < n; ++i) {
    if (r.class_of[i] != kNone) continue;
    auto cls = static_cast<Index>(r.representative.size());
    r.representative.push_back(static_cast<Index>(i));
    for (std::size_t j = i; j < n; ++j)
      if (rel[i * n + j] && rel[j * n + i]) r.class_of[j] = cls;
  }
  const std::size_t m = r.size();
  r.order.assign(m * m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      r.order[a * m + b] = rel[static_cast<std::size_t>(r.representative[a]) * n + r.representative[b]];
  return r;
}

GenCat::GenCat(std::vector<Seed> seeds) : seeds_(std::move(seeds)) {
  for (const auto& s : seeds_)
    if (s.elements.empty()) throw Error(ErrorCode::kEmptySeed, "seed '" + s.name + "' is empty");
}

std::size_t GenCat::cardinality(const Word& w) const {
  std::size_t n = 1;
  for (int s : w) n *= seeds_.at(s).elements.size();
  return n;
}

std::string GenCat::word_name(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (int i : w) s += seeds_.at(i).name;
  return s;
}

std::vector<GenCat::Word> GenCat::enumerate_objects(std::size_t bound) const {
  std::vector<Word> out{Word{}};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= bound && !seeds_.empty(); ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (int s = 0; s < static_cast<int>(seeds_.size()); ++s) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    layer_begin = layer_end;
  }
  return out;
}

std::vector<int> GenCat::decode(const Word& w, std::size_t index) const {
  std::vector<int> c(w.size());
  for (std::size_t i = w.size(); i-- > 0;) {
    std::size_t k = seeds_[w[i]].elements.size();
    c[i] = static_cast<int>(index % k);
    index /= k;
  }
  return c;
}

std::size_t GenCat::encode(const Word& w, const std::vector<int>& components) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < w.size(); ++i) index = index * seeds_[w[i]].elements.size() + components[i];
  return index;
}

FinCat GenCat::materialize(std::size_t bound) const {
  constexpr std::size_t kMorphismBudget = std::size_t{1} << 22;
  const auto words = enumerate_objects(bound);
  const std::size_t n = words.size();
  std::vector<std::size_t> card(n);
  for (std::size_t i = 0; i < n; ++i) card[i] = cardinality(words[i]);

  // offset[x*n+y] is the first arrow id of hom(x,y); arrows within a hom set
  // are ordered by the image vector read as a base-|y| numeral.
  auto offset = std::make_shared<std::vector<Index>>(n * n, kNone);
  std::size_t total = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      (*offset)[x * n + y] = static_cast<Index>(total);
      std::size_t count = 1;
      for (std::size_t t = 0; t < card[x] && count <= kMorphismBudget; ++t) count *= card[y];
      total += count;
      if (total > kMorphismBudget)
        throw Error(ErrorCode::kFiberTooLarge, "generated category exceeds the morphism budget");
    }

  FinCat cat;
  for (const auto& w : words) cat.add_object(word_name(w));
  auto images = std::make_shared<std::vector<std::vector<int>>>();
  images->reserve(total);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::vector<int> img(card[x], 0);
      bool more = true;
      while (more) {
        std::string name = word_name(words[x]) + "->" + word_name(words[y]) + ":[";
        for (std::size_t t = 0; t < img.size(); ++t) name += (t ? "," : "") + std::to_string(img[t]);
        name += "]";
        bool is_id = x == y;
        for (std::size_t t = 0; t < img.size() && is_id; ++t) is_id = img[t] == static_cast<int>(t);
        if (is_id)
          cat.add_identity(static_cast<Index>(x), std::move(name));
        else
          cat.add_morphism(std::move(name), static_cast<Index>(x), static_cast<Index>(y));
        images->push_back(img);
        more = false;
        for (std::size_t pos = img.size(); pos-- > 0;) {
          if (++img[pos] < static_cast<int>(card[y])) {
            more = true;
            break;
          }
          img[pos] = 0;
        }
      }
    }

  auto rank = [card](std::size_t y, const std::vector<int>& img) {
    std::size_t r = 0;
    for (int v : img) r = r * card[y] + static_cast<std::size_t>(v);
    return static_cast<Index>(r);
  };
  auto ends = std::make_shared<std::vector<std::pair<Index, Index>>>();
  for (Index f = 0; f < static_cast<Index>(cat.num_morphisms()); ++f) ends->emplace_back(cat.dom(f), cat.cod(f));
  cat.set_composer([images, offset, ends, rank, n](Index g, Index f) {
    const auto& fi = (*images)[f];
    const auto& gi = (*images)[g];
    std::vector<int> img(fi.size());
    for (std::size_t t = 0; t < fi.size(); ++t) img[t] = gi[fi[t]];
    auto x = static_cast<std::size_t>((*ends)[f].first);
    auto z = static_cast<std::size_t>((*ends)[g].second);
    return (*offset)[x * n + z] + rank(z, img);
  });
  cat.set_terminal(0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (words[a].size() + words[b].size() > bound) continue;
      Word ab = words[a];
      ab.insert(ab.end(), words[b].begin(), words[b].end());
      auto p = static_cast<std::size_t>(std::find(words.begin(), words.end(), ab) - words.begin());
      std::vector<int> first(card[p]), second(card[p]);
      for (std::size_t t = 0; t < card[p]; ++t) {
        first[t] = static_cast<int>(t / card[b]);
        second[t] = static_cast<int>(t % card[b]);
      }
      cat.set_product(static_cast<Index>(a), static_cast<Index>(b),
                      {static_cast<Index>(p), (*offset)[p * n + a] + rank(a, first),
                       (*offset)[p * n + b] + rank(b, second)});
    }
  return cat;
}

Report validate_base(const FinCat& cat) {
  Report r("base");
  const auto n = static_cast<Index>(cat.num_objects());
  const auto& name = [&](Index f) { return cat.morphism_name(f); };
  for (Index a = 0; a < n; ++a) {
    ++r.checked;
    Index id = cat.identity(a);
    if (id == kNone || cat.dom(id) != a || cat.cod(id) != a)
      r.fail("identity", {{"object", cat.object_name(a)}});
  }
  // Composition totality and typing.
  bool total = true;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        for (Index f : cat.hom(a, b))
          for (Index g : cat.hom(b, c)) {
            ++r.checked;
            Index gf = cat.try_compose(g, f);
            if (gf == kNone || cat.dom(gf) != a || cat.cod(gf) != c) {
              total = false;
              r.fail("composition", {{"pair", {name(g), name(f)}}});
            }
          }
  if (total) {
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        for (Index c = 0; c < n; ++c)
          for (Index d = 0; d < n; ++d)
            for (Index f : cat.hom(a, b))
              for (Index g : cat.hom(b, c)) {
                Index gf = cat.compose(g, f);
                for (Index h : cat.hom(c, d)) {
                  ++r.checked;
                  if (cat.compose(h, gf) != cat.compose(cat.compose(h, g), f))
                    r.fail("associativity", {{"triple", {name(h), name(g), name(f)}}});
                }
              }
  }
  if (cat.terminal() == kNone) {
    r.fail("terminal", {{"reason", "no terminal object"}});
  } else {
    for (Index a = 0; a < n; ++a) {
      ++r.checked;
      if (cat.hom(a, cat.terminal()).size() != 1)
        r.fail("terminal", {{"object", cat.object_name(a)},
                            {"arrows", cat.hom(a, cat.terminal()).size()}});
    }
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const Product* p = cat.product(a, b);
      if (p == nullptr) {
        ++r.skipped;
        continue;
      }
      Json at = {cat.object_name(a), cat.object_name(b)};
      if (p->first == kNone || p->second == kNone || cat.dom(p->first) != p->object ||
          cat.cod(p->first) != a || cat.dom(p->second) != p->object || cat.cod(p->second) != b) {
        r.fail("product-ump", {{"pair", at}, {"object", cat.object_name(p->object)},
                               {"reason", "projections missing or mistyped"}});
        continue;
      }
      if (!total) continue;
      for (Index x = 0; x < n; ++x)
        for (Index f : cat.hom(x, a))
          for (Index g : cat.hom(x, b)) {
            ++r.checked;
            int mediators = 0;
            for (Index h : cat.hom(x, p->object))
              if (cat.compose(p->first, h) == f && cat.compose(p->second, h) == g) ++mediators;
            if (mediators != 1)
              r.fail("product-ump", {{"pair", at}, {"object", cat.object_name(p->object)},
                                     {"test", cat.object_name(x)}, {"cone", {name(f), name(g)}},
                                     {"mediators", mediators}});
          }
    }
  return r;
}

Report validate_base(const GenCat& cat, std::size_t bound) { return validate_base(cat.materialize(bound)); }

Product product_of(const FinCat& cat, Index a, Index b) {
  const Product* p = cat.product(a, b);
  if (p == nullptr)
    throw Error(ErrorCode::kNoSuchPair, "no chosen product for (" + cat.object_name(a) + "," + cat.object_name(b) + ")");
  return *p;
}

Index pair_of(const FinCat& cat, Index f, Index g) {
  if (cat.dom(f) != cat.dom(g))
    throw Error(ErrorCode::kNoSuchPair, "mismatched domains for " + cat.morphism_name(f) + " and " + cat.morphism_name(g));
  Index h = cat.pair(f, g);
  if (h == kNone)
    throw Error(ErrorCode::kNoSuchPair, "no mediating arrow for " + cat.morphism_name(f) + " and " + cat.morphism_name(g));
  return h;
}

Subcategory full_subcategory(const FinCat& cat, const std::vector<Index>& objects) {
  Subcategory s;
  s.object_inverse.assign(cat.num_objects(), kNone);
  s.morphism_inverse.assign(cat.num_morphisms(), kNone);
  for (Index a : objects) {
    s.object_inverse[a] = s.cat.add_object(cat.object_name(a));
    s.object_map.push_back(a);
  }
  for (Index a : objects)
    for (Index b : objects)
      for (Index f : cat.hom(a, b)) {
        Index nf = cat.is_identity(f) ? s.cat.add_identity(s.object_inverse[a], cat.morphism_name(f))
                                      : s.cat.add_morphism(cat.morphism_name(f), s.object_inverse[a], s.object_inverse[b]);
        s.morphism_inverse[f] = nf;
        s.morphism_map.push_back(f);
      }
  auto parent = std::make_shared<FinCat>(cat);
  auto fwd = std::make_shared<std::vector<Index>>(s.morphism_map);
  auto inv = std::make_shared<std::vector<Index>>(s.morphism_inverse);
  s.cat.set_composer([parent, fwd, inv](Index g, Index f) {
    Index gf = parent->try_compose((*fwd)[g], (*fwd)[f]);
    return gf == kNone ? kNone : (*inv)[gf];
  });
  if (cat.terminal() != kNone) s.cat.set_terminal(s.object_inverse[cat.terminal()]);
  for (const auto& [key, p] : cat.products()) {
    auto a = static_cast<Index>(key >> 32);
    auto b = static_cast<Index>(key & 0xffffffffu);
    if (s.object_inverse[a] == kNone || s.object_inverse[b] == kNone || s.object_inverse[p.object] == kNone) continue;
    s.cat.set_product(s.object_inverse[a], s.object_inverse[b],
                      {s.object_inverse[p.object], p.first == kNone ? kNone : s.morphism_inverse[p.first],
                       p.second == kNone ? kNone : s.morphism_inverse[p.second]});
  }
  return s;
}

}  // namespace doctrina
