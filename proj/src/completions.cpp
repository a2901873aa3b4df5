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

#include "doctrina/completions.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace doctrina {

namespace {

// Triples (A, B, α ∈ P(A×B)) over a fixed anchor A, indexed contiguously by
// aux object.
struct TripleTable {
  std::vector<Index> offset;  // aux -> first triple index, kNone if A×aux is absent
  std::vector<std::pair<Index, Index>> triples;
};

}  // namespace

ExistentialCompletion existential_completion(const DoctrinePtr& pp) {
  const Doctrine& p = *pp;
  const FinCat& c = p.cat();
  const auto n = static_cast<Index>(c.num_objects());
  if (n == 0 || p.fibers.size() != c.num_objects())
    throw Error(ErrorCode::kNotTabulated, "existential completion needs a tabulated doctrine");
  const Index one = c.terminal();
  std::vector<TripleTable> tables(n);
  std::vector<PosetReflection> refl(n);
  for (Index a = 0; a < n; ++a) {
    auto& t = tables[a];
    t.offset.assign(n, kNone);
    for (Index b = 0; b < n; ++b) {
      const Product* ab = c.product(a, b);
      if (ab == nullptr) continue;
      t.offset[b] = static_cast<Index>(t.triples.size());
      for (Index x = 0; x < static_cast<Index>(p.size(ab->object)); ++x) t.triples.emplace_back(b, x);
    }
    refl[a] = poset_reflection(t.triples.size(), [&](Index i, Index j) {
      auto [b, x] = t.triples[i];
      auto [cc, y] = t.triples[j];
      const Product* ab = c.product(a, b);
      for (Index w : c.hom(ab->object, cc)) {
        Index h = c.pair(ab->first, w);
        Index hy = p.re(h, y);
        if (hy != kNone && p.leq(ab->object, x, hy)) return true;
      }
      return false;
    });
  }
  auto class_of = [&](Index a, Index b, Index x) -> Index {
    if (x == kNone || tables[a].offset[b] == kNone) return kNone;
    return refl[a].class_of[tables[a].offset[b] + x];
  };
  auto rep = [&](Index a, Index cls) { return tables[a].triples[refl[a].representative[cls]]; };

  auto d = std::make_shared<Doctrine>();
  d->name = p.name + "^E";
  d->base = p.base;
  for (Index a = 0; a < n; ++a) {
    const std::size_t k = refl[a].size();
    MeetSL m;
    m.order = refl[a].order;
    m.meets.assign(k * k, kNone);
    for (std::size_t i = 0; i < k; ++i) {
      auto [b, x] = rep(a, static_cast<Index>(i));
      m.names.push_back("E" + c.object_name(b) + "." + p.fiber(c.product(a, b)->object).names[x]);
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        auto [b, x] = rep(a, static_cast<Index>(i));
        auto [e, y] = rep(a, static_cast<Index>(j));
        Index v = kNone;
        const Product* be = c.product(b, e);
        const Product* abe = be ? c.product(a, be->object) : nullptr;
        if (abe != nullptr) {
          Index m1 = c.pair(abe->first, c.compose(be->first, abe->second));
          Index m2 = c.pair(abe->first, c.compose(be->second, abe->second));
          v = class_of(a, be->object, p.meet(abe->object, p.re(m1, x), p.re(m2, y)));
        }
        if (v == kNone) {
          if (m.order[i * k + j]) v = static_cast<Index>(i);
          else if (m.order[j * k + i]) v = static_cast<Index>(j);
        }
        m.meets[i * k + j] = v;
      }
    const Product* a1 = c.product(a, one);
    m.top = a1 ? class_of(a, one, p.top(a1->object)) : kNone;
    d->fibers.push_back(std::move(m));
  }
  d->reindex.resize(c.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    const Index a2 = c.dom(f), a = c.cod(f);
    for (Index cls = 0; cls < static_cast<Index>(refl[a].size()); ++cls) {
      auto [b, x] = rep(a, cls);
      Index fx = c.product(a2, b) ? c.cross(f, c.identity(b)) : kNone;
      d->reindex[f].push_back(fx == kNone ? kNone : class_of(a2, b, p.re(fx, x)));
    }
  }
  for (const auto& [key, pr] : c.products()) {
    const auto a = static_cast<Index>(key >> 32);
    const auto b = static_cast<Index>(key & 0xffffffffu);
    const Index ab = pr.object;
    if (pr.first != kNone && !d->exists.count(pr.first)) {
      auto& tab = d->exists[pr.first];
      for (Index cls = 0; cls < static_cast<Index>(refl[ab].size()); ++cls) {
        auto [e, x] = rep(ab, cls);
        const Product* be = c.product(b, e);
        const Product* q = be ? c.product(a, be->object) : nullptr;
        Index v = kNone;
        if (q != nullptr) {
          Index inner = c.pair(q->first, c.compose(be->first, q->second));
          Index assoc = c.pair(inner, c.compose(be->second, q->second));
          v = class_of(a, be->object, p.re(assoc, x));
        }
        tab.push_back(v);
      }
    }
    if (pr.second != kNone && !d->exists.count(pr.second)) {
      auto& tab = d->exists[pr.second];
      for (Index cls = 0; cls < static_cast<Index>(refl[ab].size()); ++cls) {
        auto [e, x] = rep(ab, cls);
        const Product* ae = c.product(a, e);
        const Product* q = ae ? c.product(b, ae->object) : nullptr;
        Index v = kNone;
        if (q != nullptr) {
          Index inner = c.pair(c.compose(ae->first, q->second), q->first);
          Index assoc = c.pair(inner, c.compose(ae->second, q->second));
          v = class_of(b, ae->object, p.re(assoc, x));
        }
        tab.push_back(v);
      }
    }
  }
  d->existential = true;

  ExistentialCompletion out;
  std::vector<std::vector<Index>> embed(n);
  for (Index a = 0; a < n; ++a) {
    const Product* a1 = c.product(a, one);
    for (Index x = 0; x < static_cast<Index>(p.size(a)); ++x)
      embed[a].push_back(a1 ? class_of(a, one, p.re(a1->first, x)) : kNone);
  }
  if (p.elementary()) {
    d->delta.assign(n, kNone);
    for (Index a = 0; a < n; ++a) {
      const Product* aa = c.product(a, a);
      if (aa != nullptr && p.delta[a] != kNone) d->delta[a] = embed[aa->object][p.delta[a]];
    }
  }
  for (Index a = 0; a < n; ++a) {
    std::vector<std::pair<Index, Index>> reps;
    for (Index cls = 0; cls < static_cast<Index>(refl[a].size()); ++cls) reps.push_back(rep(a, cls));
    out.representatives.push_back(std::move(reps));
  }
  out.doctrine = d;
  out.inclusion = inclusion_morphism(pp, d, embed);
  out.inclusion.preserves_delta = p.elementary();
  out.inclusion.preserves_exists = false;
  return out;
}

Subdoctrine inclusion_image(const ExistentialCompletion& e) {
  Subdoctrine s;
  for (const auto& v : e.inclusion.element_map) {
    std::vector<Index> img;
    for (Index x : v)
      if (x != kNone) img.push_back(x);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    s.elements.push_back(std::move(img));
  }
  return s;
}

ComprehensionCompletion comprehension_completion(const DoctrinePtr& pp) {
  const Doctrine& p = *pp;
  const FinCat& c = p.cat();
  const auto n = static_cast<Index>(c.num_objects());
  ComprehensionCompletion out;
  auto cat = std::make_shared<FinCat>();
  std::vector<std::vector<Index>> object_of(n);
  for (Index a = 0; a < n; ++a)
    for (Index x = 0; x < static_cast<Index>(p.size(a)); ++x) {
      object_of[a].push_back(cat->add_object("(" + c.object_name(a) + "," + p.fiber(a).names[x] + ")"));
      out.objects.push_back({a, x});
    }
  const auto no = static_cast<Index>(out.objects.size());
  auto lookup = std::make_shared<std::map<std::tuple<Index, Index, Index>, Index>>();
  for (Index xo = 0; xo < no; ++xo)
    for (Index yo = 0; yo < no; ++yo) {
      auto [a, alpha] = out.objects[xo];
      auto [b, beta] = out.objects[yo];
      for (Index f : c.hom(a, b)) {
        Index fb = p.re(f, beta);
        if (fb == kNone || !p.leq(a, alpha, fb)) continue;
        Index id = (xo == yo && c.is_identity(f))
                       ? cat->add_identity(xo, c.morphism_name(f) + "@" + cat->object_name(xo))
                       : cat->add_morphism(c.morphism_name(f) + "@" + cat->object_name(xo) + "->" + cat->object_name(yo), xo, yo);
        out.arrow_base.push_back(f);
        (*lookup)[{xo, yo, f}] = id;
      }
    }
  auto base = p.base;
  auto bases = std::make_shared<std::vector<Index>>(out.arrow_base);
  auto ends = std::make_shared<std::vector<std::pair<Index, Index>>>();
  for (Index f = 0; f < static_cast<Index>(cat->num_morphisms()); ++f) ends->emplace_back(cat->dom(f), cat->cod(f));
  cat->set_composer([base, bases, ends, lookup](Index g, Index f) -> Index {
    Index gf = base->try_compose((*bases)[g], (*bases)[f]);
    if (gf == kNone) return kNone;
    auto it = lookup->find({(*ends)[f].first, (*ends)[g].second, gf});
    return it == lookup->end() ? kNone : it->second;
  });
  if (c.terminal() != kNone) cat->set_terminal(object_of[c.terminal()][p.top(c.terminal())]);
  for (Index xo = 0; xo < no; ++xo)
    for (Index yo = 0; yo < no; ++yo) {
      auto [a, alpha] = out.objects[xo];
      auto [b, beta] = out.objects[yo];
      const Product* ab = c.product(a, b);
      if (ab == nullptr) continue;
      Index w = p.meet(ab->object, p.re(ab->first, alpha), p.re(ab->second, beta));
      if (w == kNone) continue;
      Index po = object_of[ab->object][w];
      cat->set_product(xo, yo, {po, lookup->at({po, xo, ab->first}), lookup->at({po, yo, ab->second})});
    }

  auto d = std::make_shared<Doctrine>();
  d->name = p.name + "_c";
  d->base = cat;
  std::vector<std::vector<Index>> local(no);
  for (Index xo = 0; xo < no; ++xo) {
    auto [a, alpha] = out.objects[xo];
    std::vector<Index> elems;
    local[xo].assign(p.size(a), kNone);
    for (Index g = 0; g < static_cast<Index>(p.size(a)); ++g)
      if (p.leq(a, g, alpha)) {
        local[xo][g] = static_cast<Index>(elems.size());
        elems.push_back(g);
      }
    const std::size_t k = elems.size();
    MeetSL m;
    m.order.assign(k * k, 0);
    m.meets.assign(k * k, kNone);
    for (std::size_t i = 0; i < k; ++i) {
      m.names.push_back(p.fiber(a).names[elems[i]]);
      for (std::size_t j = 0; j < k; ++j) {
        m.order[i * k + j] = p.leq(a, elems[i], elems[j]) ? 1 : 0;
        Index mm = p.meet(a, elems[i], elems[j]);
        m.meets[i * k + j] = mm == kNone ? kNone : local[xo][mm];
      }
    }
    m.top = local[xo][alpha];
    d->fibers.push_back(std::move(m));
    out.fiber_elements.push_back(std::move(elems));
  }
  auto to_local = [&](Index xo, Index g) { return g == kNone ? kNone : local[xo][g]; };
  d->reindex.resize(cat->num_morphisms());
  for (Index f = 0; f < static_cast<Index>(cat->num_morphisms()); ++f) {
    const Index xo = cat->dom(f), yo = cat->cod(f);
    const Index a = out.objects[xo].carrier;
    for (Index g : out.fiber_elements[yo])
      d->reindex[f].push_back(to_local(xo, p.meet(a, p.re(out.arrow_base[f], g), out.objects[xo].pred)));
  }
  if (p.elementary()) {
    d->delta.assign(no, kNone);
    for (Index xo = 0; xo < no; ++xo) {
      const Product* xx = cat->product(xo, xo);
      const Index a = out.objects[xo].carrier;
      if (xx == nullptr || p.delta[a] == kNone) continue;
      const Index aa = out.objects[xx->object].carrier;
      d->delta[xo] = to_local(xx->object, p.meet(aa, p.delta[a], out.objects[xx->object].pred));
    }
  }
  if (p.existential) {
    for (Index pi : projections(*cat)) {
      auto& tab = d->exists[pi];
      for (Index g : out.fiber_elements[cat->dom(pi)]) tab.push_back(to_local(cat->cod(pi), p.ex(out.arrow_base[pi], g)));
    }
    d->existential = true;
  }
  out.cat = cat;
  out.doctrine = d;
  out.lookup = lookup;
  return out;
}

namespace {

// Chosen products B1×B2 = B with both factors distinct from B.
std::vector<const Product*> product_splits(const FinCat& c) {
  std::vector<const Product*> split(c.num_objects(), nullptr);
  for (const auto& [key, pr] : c.products()) {
    Index b1 = static_cast<Index>(key >> 32), b2 = static_cast<Index>(key & 0xffffffffu);
    if (b1 != pr.object && b2 != pr.object && split[pr.object] == nullptr) split[pr.object] = &pr;
  }
  return split;
}

// α ≤ P_⟨f,g⟩(δ); compared componentwise through a product split when
// B×B lies outside a bounded base.
bool equal_under(const Doctrine& p, const std::vector<const Product*>& split, Index f, Index g, Index alpha) {
  const FinCat& c = p.cat();
  if (f == g) return true;
  const Index b = c.cod(f);
  if (b == c.terminal()) return true;
  Index h = c.pair(f, g);
  if (h != kNone && p.delta[b] != kNone) {
    Index v = p.re(h, p.delta[b]);
    return v != kNone && p.leq(c.dom(f), alpha, v);
  }
  const Product* pr = split[b];
  if (pr == nullptr) return false;
  return equal_under(p, split, c.compose(pr->first, f), c.compose(pr->first, g), alpha) &&
         equal_under(p, split, c.compose(pr->second, f), c.compose(pr->second, g), alpha);
}

// Tables agreeing wherever both cells are defined.
bool compatible(const std::vector<Index>& x, const std::vector<Index>& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != kNone && y[i] != kNone && x[i] != y[i]) return false;
  return true;
}

ExtensionalReflection extensional_quotient(const DoctrinePtr& pp, const std::function<bool(Index, Index)>& related) {
  const Doctrine& p = *pp;
  const FinCat& c = p.cat();
  const auto n = static_cast<Index>(c.num_objects());
  ExtensionalReflection out;
  out.class_of.assign(c.num_morphisms(), kNone);
  auto cat = std::make_shared<FinCat>();
  for (Index a = 0; a < n; ++a) cat->add_object(c.object_name(a));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const auto& hs = c.hom(a, b);
      for (Index f : hs) {
        if (out.class_of[f] != kNone) continue;
        Index cls = c.is_identity(f) ? cat->add_identity(a, c.morphism_name(f))
                                     : cat->add_morphism(c.morphism_name(f), a, b);
        out.representative.push_back(f);
        for (Index g : hs)
          if (related(f, g)) {
            if (out.class_of[g] != kNone)
              throw Error(ErrorCode::kIllDefinedQuotient, "relation is not transitive at " + c.morphism_name(g));
            out.class_of[g] = cls;
            if (!related(g, f))
              throw Error(ErrorCode::kIllDefinedQuotient, "relation is not symmetric at " + c.morphism_name(g));
            if (!compatible(p.reindex[f], p.reindex[g]))
              throw Error(ErrorCode::kIllDefinedQuotient,
                          "related arrows " + c.morphism_name(f) + " and " + c.morphism_name(g) + " reindex differently");
          }
      }
    }
  // Composition must respect the relation.
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index f : c.hom(a, b))
        for (Index e = 0; e < n; ++e)
          for (Index g : c.hom(b, e)) {
            Index gf = c.try_compose(g, f);
            Index rep = c.try_compose(out.representative[out.class_of[g]], out.representative[out.class_of[f]]);
            if (gf == kNone || rep == kNone) continue;
            if (out.class_of[gf] != out.class_of[rep])
              throw Error(ErrorCode::kIllDefinedQuotient,
                          "composition not stable at " + c.morphism_name(g) + " after " + c.morphism_name(f));
          }
  auto base = p.base;
  auto reps = std::make_shared<std::vector<Index>>(out.representative);
  auto cls = std::make_shared<std::vector<Index>>(out.class_of);
  cat->set_composer([base, reps, cls](Index g, Index f) -> Index {
    Index gf = base->try_compose((*reps)[g], (*reps)[f]);
    return gf == kNone ? kNone : (*cls)[gf];
  });
  cat->set_terminal(c.terminal());
  auto d = std::make_shared<Doctrine>();
  d->name = p.name + "_x";
  d->base = cat;
  d->fibers = p.fibers;
  for (Index r : out.representative) d->reindex.push_back(p.reindex[r]);
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    auto& row = d->reindex[out.class_of[f]];
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] == kNone) row[i] = p.reindex[f][i];
  }
  d->delta = p.delta;
  for (const auto& [key, pr] : c.products()) {
    Product q{pr.object, pr.first == kNone ? kNone : out.class_of[pr.first],
              pr.second == kNone ? kNone : out.class_of[pr.second]};
    cat->set_product(static_cast<Index>(key >> 32), static_cast<Index>(key & 0xffffffffu), q);
    for (Index pi : {pr.first, pr.second}) {
      if (pi == kNone) continue;
      auto it = p.exists.find(pi);
      if (it != p.exists.end()) d->exists[out.class_of[pi]] = it->second;
    }
  }
  d->existential = p.existential;
  out.cat = cat;
  out.doctrine = d;
  return out;
}

}  // namespace

ExtensionalReflection extensional_reflection(const DoctrinePtr& pp) {
  const Doctrine& p = *pp;
  if (!p.elementary()) throw Error(ErrorCode::kMissingStructure, "extensional reflection needs equality");
  auto split = product_splits(p.cat());
  return extensional_quotient(pp, [&](Index f, Index g) {
    return equal_under(p, split, f, g, p.top(p.cat().dom(f)));
  });
}

Index PredCategory::find(Index carrier, Index pred) const {
  for (Index i = 0; i < static_cast<Index>(objects.size()); ++i)
    if (objects[i].carrier == carrier && objects[i].pred == pred) return i;
  return kNone;
}

Index PredCategory::arrow(Index x, Index y, Index base_arrow) const {
  auto it = lookup->find({x, y, base_arrow});
  return it == lookup->end() ? kNone : it->second;
}

PredCategory pred_category(const DoctrinePtr& p) {
  ComprehensionCompletion cc = comprehension_completion(p);
  if (!p->elementary()) throw Error(ErrorCode::kMissingStructure, "extensional reflection needs equality");
  auto split = product_splits(p->cat());
  const auto& cc_cat = cc.doctrine->cat();
  ExtensionalReflection er = extensional_quotient(cc.doctrine, [&](Index f, Index g) {
    return equal_under(*p, split, cc.arrow_base[f], cc.arrow_base[g], cc.objects[cc_cat.dom(f)].pred);
  });
  PredCategory out;
  out.cat = er.cat;
  out.doctrine = er.doctrine;
  out.objects = cc.objects;
  for (Index r : er.representative) out.arrow_base.push_back(cc.arrow_base[r]);
  out.fiber_elements = cc.fiber_elements;
  out.source = p;
  auto lookup = std::make_shared<std::map<std::tuple<Index, Index, Index>, Index>>();
  for (const auto& [key, arrow] : *cc.lookup) (*lookup)[key] = er.class_of[arrow];
  out.lookup = lookup;
  return out;
}

bool is_monic(const FinCat& cat, Index f) {
  const Index x = cat.dom(f);
  for (Index w = 0; w < static_cast<Index>(cat.num_objects()); ++w) {
    std::vector<Index> images;
    for (Index g : cat.hom(w, x)) images.push_back(cat.try_compose(f, g));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  }
  return true;
}

const char* strength_name(Strength s) {
  switch (s) {
    case Strength::kStrong: return "strong";
    case Strength::kWeak: return "weak";
    default: return "none";
  }
}

namespace {

// Strength of m as a comprehension of α (none if it is not even weak).
Strength comprehension_strength(const Doctrine& p, Index a, Index alpha, Index m) {
  const FinCat& c = p.cat();
  const Index x = c.dom(m);
  if (p.re(m, alpha) != p.top(x)) return Strength::kNone;
  bool unique = true;
  for (Index z = 0; z < static_cast<Index>(c.num_objects()); ++z)
    for (Index f : c.hom(z, a)) {
      if (p.re(f, alpha) != p.top(z)) continue;
      int mediators = 0;
      for (Index g : c.hom(z, x))
        if (c.try_compose(m, g) == f) ++mediators;
      if (mediators == 0) return Strength::kNone;
      if (mediators > 1) unique = false;
    }
  return unique ? Strength::kStrong : Strength::kWeak;
}

}  // namespace

ComprehensionResult comprehension(const Doctrine& p, Index a, Index alpha) {
  const FinCat& c = p.cat();
  ComprehensionResult weak;
  for (Index x = 0; x < static_cast<Index>(c.num_objects()); ++x)
    for (Index m : c.hom(x, a)) {
      Strength s = comprehension_strength(p, a, alpha, m);
      if (s == Strength::kStrong) return {m, s};
      if (s == Strength::kWeak && weak.arrow == kNone) weak = {m, s};
    }
  return weak;
}

Report check_m_variational(const Doctrine& p) {
  Report r("m-variational");
  const FinCat& c = p.cat();
  const auto n = static_cast<Index>(c.num_objects());
  bool full = true, diagonals = true, all = true;
  for (Index a = 0; a < n; ++a) {
    std::vector<Index> comp(p.size(a), kNone);
    for (Index x = 0; x < static_cast<Index>(p.size(a)); ++x) {
      ++r.checked;
      ComprehensionResult res = comprehension(p, a, x);
      if (res.strength != Strength::kStrong) {
        all = false;
        r.fail("comprehension", {{"object", c.object_name(a)}, {"element", p.fiber(a).names[x]},
                                 {"strength", strength_name(res.strength)}});
      }
      comp[x] = res.arrow;
    }
    for (Index x = 0; x < static_cast<Index>(p.size(a)); ++x)
      for (Index y = 0; y < static_cast<Index>(p.size(a)); ++y) {
        if (comp[x] == kNone || comp[y] == kNone) continue;
        ++r.checked;
        bool factors = false;
        for (Index h : c.hom(c.dom(comp[x]), c.dom(comp[y])))
          if (c.try_compose(comp[y], h) == comp[x]) factors = true;
        if (factors && !p.leq(a, x, y)) {
          full = false;
          r.fail("full", {{"object", c.object_name(a)}, {"pair", {p.fiber(a).names[x], p.fiber(a).names[y]}}});
        }
      }
    if (p.elementary()) {
      const Product* aa = c.product(a, a);
      Index diag = c.diagonal(a);
      if (aa == nullptr || diag == kNone || p.delta[a] == kNone) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      if (comprehension_strength(p, aa->object, p.delta[a], diag) != Strength::kStrong) {
        diagonals = false;
        r.fail("comprehensive-diagonal", {{"object", c.object_name(a)}});
      }
    }
  }
  r.details["comprehensions"] = all;
  r.details["full"] = full;
  r.details["comprehensive_diagonals"] = p.elementary() && diagonals;
  return r;
}

PullbackCone pred_pullback(const PredCategory& pc, Index f, Index g) {
  const FinCat& pred = *pc.cat;
  const Doctrine& p = *pc.source;
  const FinCat& c = p.cat();
  PullbackCone out;
  const Index xo = pred.dom(f), yo = pred.dom(g), zo = pred.cod(f);
  const PredObject x = pc.objects[xo], y = pc.objects[yo], z = pc.objects[zo];
  const Product* ab = c.product(x.carrier, y.carrier);
  if (ab == nullptr || !p.elementary() || p.delta[z.carrier] == kNone) return out;
  Index h = c.pair(c.compose(pc.arrow_base[f], ab->first), c.compose(pc.arrow_base[g], ab->second));
  if (h == kNone) return out;
  Index w = p.meet(ab->object, p.re(ab->first, x.pred), p.re(ab->second, y.pred));
  w = p.meet(ab->object, w, p.re(h, p.delta[z.carrier]));
  if (w == kNone) return out;
  out.object = pc.find(ab->object, w);
  out.first = pc.arrow(out.object, xo, ab->first);
  out.second = pc.arrow(out.object, yo, ab->second);
  return out;
}

Report check_pred(const PredCategory& pc) {
  Report r("pred");
  const FinCat& c = *pc.cat;
  const Doctrine& d = *pc.doctrine;
  const auto n = static_cast<Index>(c.num_objects());
  const auto m = static_cast<Index>(c.num_morphisms());
  Report mv = check_m_variational(d);
  r.merge(mv);
  // Pullbacks and BCC of ∃_f along them.
  bool lex = true;
  for (Index f = 0; f < m; ++f)
    for (Index g = 0; g < m; ++g) {
      if (c.cod(f) != c.cod(g)) continue;
      PullbackCone pb = pred_pullback(pc, f, g);
      if (pb.object == kNone || pb.first == kNone || pb.second == kNone) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      if (c.try_compose(f, pb.first) != c.try_compose(g, pb.second)) {
        lex = false;
        r.fail("pullback-square", {{"cospan", {c.morphism_name(f), c.morphism_name(g)}}});
        continue;
      }
      for (Index w = 0; w < n; ++w)
        for (Index h : c.hom(w, c.dom(f)))
          for (Index k : c.hom(w, c.dom(g))) {
            if (c.try_compose(f, h) != c.try_compose(g, k)) continue;
            ++r.checked;
            int mediators = 0;
            for (Index u : c.hom(w, pb.object))
              if (c.try_compose(pb.first, u) == h && c.try_compose(pb.second, u) == k) ++mediators;
            if (mediators != 1) {
              lex = false;
              r.fail("pullback-ump", {{"cospan", {c.morphism_name(f), c.morphism_name(g)}},
                                      {"test", c.object_name(w)}, {"mediators", mediators}});
            }
          }
      if (d.elementary() && d.existential) {
        for (Index x = 0; x < static_cast<Index>(d.size(c.dom(f))); ++x) {
          Index lhs = exists_along(d, pb.second, d.re(pb.first, x));
          Index rhs = d.re(g, exists_along(d, f, x));
          if (lhs == kNone || rhs == kNone) {
            ++r.skipped;
            continue;
          }
          ++r.checked;
          if (lhs != rhs)
            r.fail("exists-along-bcc", {{"cospan", {c.morphism_name(f), c.morphism_name(g)}},
                                        {"element", d.fiber(c.dom(f)).names[x]}});
        }
      }
    }
  r.details["lex"] = lex;
  // Monos are exactly the arrows with P_{f×f}(δ) = δ.
  for (Index f = 0; f < m && d.elementary(); ++f) {
    Index ff = c.cross(f, f);
    if (ff == kNone || d.delta[c.dom(f)] == kNone || d.delta[c.cod(f)] == kNone) {
      ++r.skipped;
      continue;
    }
    ++r.checked;
    bool by_delta = d.re(ff, d.delta[c.cod(f)]) == d.delta[c.dom(f)];
    if (by_delta != is_monic(c, f))
      r.fail("mono-iff-delta", {{"arrow", c.morphism_name(f)}, {"monic", !by_delta}});
  }
  // Comprehensions are monic and stable under pullback.
  for (Index a = 0; a < n; ++a)
    for (Index x = 0; x < static_cast<Index>(d.size(a)); ++x) {
      ComprehensionResult cr = comprehension(d, a, x);
      if (cr.arrow == kNone) continue;
      ++r.checked;
      if (!is_monic(c, cr.arrow)) r.fail("comprehension-monic", {{"object", c.object_name(a)}, {"element", d.fiber(a).names[x]}});
      for (Index w = 0; w < n; ++w)
        for (Index f : c.hom(w, a)) {
          PullbackCone pb = pred_pullback(pc, f, cr.arrow);
          Index fx = d.re(f, x);
          if (pb.first == kNone || fx == kNone) {
            ++r.skipped;
            continue;
          }
          ++r.checked;
          if (comprehension_strength(d, w, fx, pb.first) != Strength::kStrong)
            r.fail("comprehension-stable", {{"arrow", c.morphism_name(f)}, {"element", d.fiber(a).names[x]}});
        }
    }
  // Functional elements are those whose comprehension projects monically.
  for (const auto& [key, q] : c.products()) {
    const auto a = static_cast<Index>(key >> 32);
    const auto b = static_cast<Index>(key & 0xffffffffu);
    const Product* r3 = c.product(q.object, b);
    const Product* bb = c.product(b, b);
    if (r3 == nullptr || bb == nullptr || !d.elementary() || d.delta[b] == kNone) {
      r.skipped += d.size(q.object);
      continue;
    }
    Index l = r3->first;
    Index mm = c.pair(c.compose(q.first, r3->first), r3->second);
    Index dd = c.pair(c.compose(q.second, r3->first), r3->second);
    (void)a;
    for (Index phi = 0; phi < static_cast<Index>(d.size(q.object)); ++phi) {
      Index lhs = d.meet(r3->object, d.re(l, phi), d.re(mm, phi));
      Index rhs = d.re(dd, d.delta[b]);
      ComprehensionResult cr = comprehension(d, q.object, phi);
      if (lhs == kNone || rhs == kNone || cr.arrow == kNone) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      bool functional = d.leq(r3->object, lhs, rhs);
      if (functional != is_monic(c, c.compose(q.first, cr.arrow)))
        r.fail("functional-iff-monic", {{"object", c.object_name(q.object)}, {"element", d.fiber(q.object).names[phi]}});
    }
  }
  return r;
}

}  // namespace doctrina
