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

#include "doctrina/regexcat.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace doctrina {

Functor identity_functor(const CatPtr& cat) {
  Functor f{cat, cat, {}, {}};
  f.object_map.resize(cat->num_objects());
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  f.morphism_map.resize(cat->num_morphisms());
  std::iota(f.morphism_map.begin(), f.morphism_map.end(), 0);
  return f;
}

Report check_functor(const Functor& f) {
  Report r("functor");
  const FinCat& s = *f.source;
  const FinCat& t = *f.target;
  for (Index m = 0; m < static_cast<Index>(s.num_morphisms()); ++m) {
    ++r.checked;
    Index fm = f.morphism_map[m];
    if (fm == kNone || t.dom(fm) != f.object_map[s.dom(m)] || t.cod(fm) != f.object_map[s.cod(m)])
      r.fail("typing", {{"arrow", s.morphism_name(m)}});
  }
  for (Index a = 0; a < static_cast<Index>(s.num_objects()); ++a) {
    ++r.checked;
    if (f.morphism_map[s.identity(a)] != t.identity(f.object_map[a])) r.fail("identity", {{"object", s.object_name(a)}});
  }
  for (Index g = 0; g < static_cast<Index>(s.num_morphisms()); ++g)
    for (Index x = 0; x < static_cast<Index>(s.num_objects()); ++x)
      for (Index h : s.hom(x, s.dom(g))) {
        Index gh = s.try_compose(g, h);
        if (gh == kNone || f.morphism_map[g] == kNone || f.morphism_map[h] == kNone) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        if (t.try_compose(f.morphism_map[g], f.morphism_map[h]) != f.morphism_map[gh])
          r.fail("composition", {{"g", s.morphism_name(g)}, {"f", s.morphism_name(h)}});
      }
  return r;
}

Relations::Relations(DoctrinePtr p) : p_(std::move(p)) {
  if (!p_->elementary()) throw Error(ErrorCode::kMissingStructure, "relations need equality");
  if (!p_->existential) throw Error(ErrorCode::kMissingStructure, "relations need existential quantifiers");
}

Index Relations::product(Index a, Index b) const {
  const Product* pr = cat().product(a, b);
  return pr ? pr->object : kNone;
}

Index Relations::converse(Index a, Index b, Index phi) const {
  const Product* ab = cat().product(a, b);
  const Product* ba = cat().product(b, a);
  if (!ab || !ba) return kNone;
  return p_->re(cat().pair(ba->second, ba->first), phi);
}

const Relations::Triple& Relations::triple(Index a, Index b, Index c) const {
  auto key = std::make_tuple(a, b, c);
  auto it = triples_.find(key);
  if (it != triples_.end()) return it->second;
  Triple t;
  const FinCat& k = cat();
  const Product* ac = k.product(a, c);
  const Product* ab = k.product(a, b);
  const Product* bc = k.product(b, c);
  if (ac && ab && bc) {
    if (const Product* top = k.product(ac->object, b)) {
      t.object = top->object;
      t.first = top->first;
      t.second = top->second;
      Index to_a = k.try_compose(ac->first, top->first);
      Index to_c = k.try_compose(ac->second, top->first);
      t.left = k.pair(to_a, top->second);
      t.right = k.pair(top->second, to_c);
      if (t.left == kNone || t.right == kNone) t.object = kNone;
    }
  }
  return triples_.emplace(key, t).first->second;
}

Index Relations::compose(Index a, Index b, Index c, Index phi, Index psi) const {
  if (phi == kNone || psi == kNone) return kNone;
  const Triple& t = triple(a, b, c);
  if (t.object == kNone) return kNone;
  Index both = p_->meet(t.object, p_->re(t.left, phi), p_->re(t.right, psi));
  return p_->ex(t.first, both);
}

Index Relations::identity(Index a, Index alpha) const {
  const Product* aa = cat().product(a, a);
  if (!aa || p_->delta[a] == kNone) return kNone;
  Index x = p_->meet(aa->object, p_->delta[a], p_->re(aa->first, alpha));
  return p_->meet(aa->object, x, p_->re(aa->second, alpha));
}

Index Relations::graph(Index f, Index alpha) const {
  const FinCat& k = cat();
  Index a = k.dom(f), b = k.cod(f);
  const Product* ab = k.product(a, b);
  if (!ab || p_->delta[b] == kNone) return kNone;
  Index fx = k.cross(f, k.identity(b));
  if (fx == kNone) return kNone;
  return p_->meet(ab->object, p_->re(fx, p_->delta[b]), p_->re(ab->first, alpha));
}

Index Relations::domain(Index a, Index b, Index phi) const {
  const Product* ab = cat().product(a, b);
  return ab ? p_->ex(ab->first, phi) : kNone;
}

Index Relations::codomain(Index a, Index b, Index phi) const {
  const Product* ab = cat().product(a, b);
  return ab ? p_->ex(ab->second, phi) : kNone;
}

Index Relations::box(Index a, Index b, Index alpha, Index beta) const {
  const Product* ab = cat().product(a, b);
  if (!ab) return kNone;
  return p_->meet(ab->object, p_->re(ab->first, alpha), p_->re(ab->second, beta));
}

Index RelationalCategory::find_object(Index carrier, Index pred) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].carrier == carrier && objects[i].pred == pred) return static_cast<Index>(i);
  return kNone;
}

Index RelationalCategory::arrow(Index x, Index y, Index phi) const {
  auto it = lookup.find({x, y, phi});
  return it == lookup.end() ? kNone : it->second;
}

namespace {

std::vector<Index> carrier_list(const Doctrine& p, const RelOptions& opts) {
  if (!opts.carriers.empty()) return opts.carriers;
  std::vector<Index> all(p.cat().num_objects());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

bool contains(const std::vector<Index>& v, Index x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// ρ ⊠ σ on (A×B)×(A×B).
Index per_product(const Relations& rel, Index a, Index b, Index rho, Index sigma) {
  const FinCat& k = rel.cat();
  const Product* ab = k.product(a, b);
  if (!ab) return kNone;
  const Product* q = k.product(ab->object, ab->object);
  if (!q) return kNone;
  Index on_a = k.pair(k.try_compose(ab->first, q->first), k.try_compose(ab->first, q->second));
  Index on_b = k.pair(k.try_compose(ab->second, q->first), k.try_compose(ab->second, q->second));
  if (on_a == kNone || on_b == kNone) return kNone;
  const Doctrine& p = rel.doctrine();
  return p.meet(q->object, p.re(on_a, rho), p.re(on_b, sigma));
}

RelationalCategory build_relational(const DoctrinePtr& p, const RelOptions& opts, bool exact) {
  RelationalCategory r;
  r.doctrine = p;
  r.rel = std::make_shared<Relations>(p);
  r.exact = exact;
  r.cat = std::make_shared<FinCat>();
  r.laws = Report(exact ? "ex-completion" : "reg-completion");
  const Relations& rel = *r.rel;
  const Doctrine& d = *p;
  const FinCat& base = d.cat();
  const auto carriers = carrier_list(d, opts);

  // Objects.
  std::vector<Index> support;  // object -> ∃_{π1}(ρ) for Ex, the predicate for Reg
  for (Index a : carriers) {
    if (!exact) {
      for (Index x = 0; x < static_cast<Index>(d.size(a)); ++x) {
        r.objects.push_back({a, x});
        support.push_back(x);
      }
      continue;
    }
    Index aa = rel.product(a, a);
    if (aa == kNone) continue;
    for (Index rho = 0; rho < static_cast<Index>(d.size(aa)); ++rho) {
      ++r.laws.checked;
      Index conv = rel.converse(a, a, rho);
      Index sq = rel.compose(a, a, a, rho, rho);
      if (conv == kNone || sq == kNone) {
        ++r.laws.skipped;
        continue;
      }
      if (!d.leq(aa, rho, conv) || !d.leq(aa, sq, rho)) continue;
      if (opts.reflexive_only && !rel.leq(aa, d.delta[a], rho)) continue;
      r.objects.push_back({a, rho});
      support.push_back(rel.domain(a, a, rho));
    }
  }
  auto object_name = [&](const PredObject& o) {
    Index fiber = exact ? rel.product(o.carrier, o.carrier) : o.carrier;
    return "(" + base.object_name(o.carrier) + "," + d.fiber(fiber).names[o.pred] + ")";
  };
  for (const auto& o : r.objects) r.cat->add_object(object_name(o));

  // Hom sets, per pair of carriers.
  const auto n = static_cast<Index>(r.objects.size());
  for (Index x = 0; x < n; ++x) {
    const PredObject& ox = r.objects[x];
    for (Index y = 0; y < n; ++y) {
      const PredObject& oy = r.objects[y];
      Index a = ox.carrier, b = oy.carrier;
      Index ab = rel.product(a, b);
      if (ab == kNone) {
        if (x == y) throw Error(ErrorCode::kMissingStructure, "no product " + base.object_name(a) + "×" + base.object_name(a));
        continue;
      }
      if (d.size(ab) > opts.budget)
        throw Error(ErrorCode::kFiberTooLarge, "hom enumeration over " + base.object_name(ab) + " exceeds the budget of " +
                                                   std::to_string(opts.budget));
      Index bound = rel.box(a, b, support[x], support[y]);
      Index id = kNone;
      if (x == y) {
        id = exact ? ox.pred : rel.identity(a, ox.pred);
        if (id == kNone) throw Error(ErrorCode::kMissingStructure, "identity of " + object_name(ox) + " escaped a bound");
      }
      std::vector<Index> found;
      for (Index phi = 0; phi < static_cast<Index>(d.size(ab)); ++phi) {
        if (!rel.leq(ab, phi, bound)) continue;
        Index conv = rel.converse(a, b, phi);
        bool ok;
        if (!exact) {
          Index single = rel.compose(b, a, b, conv, phi);
          ok = rel.leq(a, ox.pred, rel.domain(a, b, phi)) && rel.leq(rel.product(b, b), single, d.delta[b]);
          if (single == kNone) ++r.laws.skipped;
        } else {
          Index aa = rel.product(a, a), bb = rel.product(b, b);
          ok = rel.leq(ab, rel.compose(a, a, b, ox.pred, phi), phi) && rel.leq(ab, rel.compose(a, b, b, phi, oy.pred), phi) &&
               rel.leq(bb, rel.compose(b, a, b, conv, phi), oy.pred) &&
               rel.leq(aa, ox.pred, rel.compose(a, b, a, phi, conv));
        }
        if (ok) found.push_back(phi);
      }
      if (x == y && !contains(found, id)) {
        r.laws.fail("identity-is-arrow", {{"object", object_name(ox)}});
        found.insert(std::lower_bound(found.begin(), found.end(), id), id);
      }
      for (Index phi : found) {
        std::string name = object_name(ox) + "->" + object_name(oy) + ":" + d.fiber(ab).names[phi];
        Index f = phi == id ? r.cat->add_identity(x, name) : r.cat->add_morphism(name, x, y);
        r.relation.push_back(phi);
        r.lookup[{x, y, phi}] = f;
      }
      for (Index u : found)
        for (Index v : found) {
          ++r.laws.checked;
          if (u != v && d.leq(ab, u, v))
            r.laws.fail("parallel-order", {{"from", object_name(ox)}, {"to", object_name(oy)},
                                           {"smaller", d.fiber(ab).names[u]}, {"larger", d.fiber(ab).names[v]}});
        }
    }
  }

  // Composition.
  FinCat& c = *r.cat;
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f)
    for (Index z = 0; z < n; ++z)
      for (Index g : c.hom(c.cod(f), z)) {
        Index a = r.objects[c.dom(f)].carrier, b = r.objects[c.cod(f)].carrier, cc = r.objects[z].carrier;
        Index h = rel.compose(a, b, cc, r.relation[f], r.relation[g]);
        if (h == kNone) {
          ++r.laws.skipped;
          continue;
        }
        Index gf = r.arrow(c.dom(f), z, h);
        if (gf == kNone) r.laws.fail("composition-closed", {{"f", c.morphism_name(f)}, {"g", c.morphism_name(g)}});
        else c.set_composite(g, f, gf);
      }

  // Terminal and products.
  Index one = base.terminal();
  if (one != kNone && contains(carriers, one)) {
    Index t = exact ? r.find_object(one, d.top(rel.product(one, one))) : r.find_object(one, d.top(one));
    c.set_terminal(t);
  }
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const PredObject& ox = r.objects[x];
      const PredObject& oy = r.objects[y];
      const Product* pr = base.product(ox.carrier, oy.carrier);
      if (!pr || !contains(carriers, pr->object)) continue;
      Index pred = exact ? per_product(rel, ox.carrier, oy.carrier, ox.pred, oy.pred)
                         : rel.box(ox.carrier, oy.carrier, ox.pred, oy.pred);
      Index xy = r.find_object(pr->object, pred);
      if (xy == kNone) {
        ++r.laws.skipped;
        continue;
      }
      Index e = support[xy];
      Index g1 = rel.graph(pr->first, e), g2 = rel.graph(pr->second, e);
      if (exact) {
        g1 = rel.compose(pr->object, ox.carrier, ox.carrier, g1, ox.pred);
        g2 = rel.compose(pr->object, oy.carrier, oy.carrier, g2, oy.pred);
      }
      Index p1 = r.arrow(xy, x, g1), p2 = r.arrow(xy, y, g2);
      if (p1 == kNone || p2 == kNone) {
        r.laws.fail("product-projections", {{"left", object_name(ox)}, {"right", object_name(oy)}});
        continue;
      }
      c.set_product(x, y, {xy, p1, p2});
    }
  r.laws.merge(validate_base(c));
  r.laws.details = {{"objects", c.num_objects()}, {"arrows", c.num_morphisms()}};
  return r;
}

}  // namespace

RelationalCategory reg_completion(const DoctrinePtr& p, const RelOptions& opts) {
  return build_relational(p, opts, false);
}

RelationalCategory ex_completion(const DoctrinePtr& p, const RelOptions& opts) {
  return build_relational(p, opts, true);
}

namespace {

struct Cone {
  Index object, first, second;
};

std::vector<Cone> cones(const FinCat& c, Index f, Index g) {
  std::vector<Cone> out;
  for (Index w = 0; w < static_cast<Index>(c.num_objects()); ++w)
    for (Index a : c.hom(w, c.dom(f)))
      for (Index b : c.hom(w, c.dom(g)))
        if (c.try_compose(f, a) == c.try_compose(g, b) && c.try_compose(f, a) != kNone) out.push_back({w, a, b});
  return out;
}

}  // namespace

std::optional<PullbackCone> find_pullback(const FinCat& c, Index f, Index g) {
  auto all = cones(c, f, g);
  for (const Cone& p : all) {
    bool universal = true;
    for (const Cone& q : all) {
      int mediators = 0;
      for (Index u : c.hom(q.object, p.object))
        if (c.try_compose(p.first, u) == q.first && c.try_compose(p.second, u) == q.second) ++mediators;
      if (mediators != 1) {
        universal = false;
        break;
      }
    }
    if (universal) return PullbackCone{p.object, p.first, p.second};
  }
  return std::nullopt;
}

bool is_coequalizer(const FinCat& c, Index e, Index a, Index b) {
  if (c.try_compose(e, a) != c.try_compose(e, b)) return false;
  Index x = c.cod(a), q = c.cod(e);
  for (Index w = 0; w < static_cast<Index>(c.num_objects()); ++w)
    for (Index h : c.hom(x, w)) {
      if (c.try_compose(h, a) != c.try_compose(h, b)) continue;
      int mediators = 0;
      for (Index u : c.hom(q, w))
        if (c.try_compose(u, e) == h) ++mediators;
      if (mediators != 1) return false;
    }
  return true;
}

std::optional<bool> is_regular_epi_categorical(const FinCat& c, Index f) {
  auto kp = find_pullback(c, f, f);
  if (!kp) return std::nullopt;
  return is_coequalizer(c, f, kp->first, kp->second);
}

bool is_regular_epi(const RelationalCategory& r, Index f) {
  const FinCat& c = *r.cat;
  const PredObject& x = r.objects[c.dom(f)];
  const PredObject& y = r.objects[c.cod(f)];
  const Relations& rel = *r.rel;
  if (!r.exact) return rel.codomain(x.carrier, y.carrier, r.relation[f]) == y.pred;
  // For PERs: φ is onto the support of σ.
  return rel.codomain(x.carrier, y.carrier, r.relation[f]) == rel.domain(y.carrier, y.carrier, y.pred);
}

Report check_regular_epis(const RelationalCategory& r) {
  Report rep("regular-epis");
  const FinCat& c = *r.cat;
  std::size_t epis = 0;
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    auto categorical = is_regular_epi_categorical(c, f);
    if (!categorical) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    bool fiber = is_regular_epi(r, f);
    if (fiber) ++epis;
    if (fiber != *categorical)
      rep.fail("fiber-vs-coequalizer", {{"arrow", c.morphism_name(f)}, {"fiber", fiber}, {"coequalizer", *categorical}});
  }
  rep.details = {{"arrows", c.num_morphisms()}, {"regular_epis", epis}};
  return rep;
}

ImageFactorization image_factorization(const RelationalCategory& r, Index f) {
  const FinCat& c = *r.cat;
  const Relations& rel = *r.rel;
  const Doctrine& d = *r.doctrine;
  Index x = c.dom(f), y = c.cod(f);
  const PredObject& ox = r.objects[x];
  const PredObject& oy = r.objects[y];
  Index a = ox.carrier, b = oy.carrier;
  Index phi = r.relation[f];
  Index gamma = rel.codomain(a, b, phi);
  ImageFactorization out;
  Index image, inclusion;
  if (!r.exact) {
    image = r.find_object(b, gamma);
    inclusion = rel.identity(b, gamma);
  } else {
    Index bb = rel.product(b, b);
    const Product* pb = d.cat().product(b, b);
    Index sigma = pb ? d.meet(bb, oy.pred, d.meet(bb, d.re(pb->first, gamma), d.re(pb->second, gamma))) : kNone;
    image = r.find_object(b, sigma);
    inclusion = rel.compose(b, b, b, sigma, oy.pred);
  }
  if (image == kNone) return out;
  out.epi = r.arrow(x, image, phi);
  out.mono = r.arrow(image, y, inclusion);
  return out;
}

bool is_relational_mono(const RelationalCategory& r, Index f) {
  const FinCat& c = *r.cat;
  const Relations& rel = *r.rel;
  const PredObject& ox = r.objects[c.dom(f)];
  const PredObject& oy = r.objects[c.cod(f)];
  Index a = ox.carrier, b = oy.carrier;
  Index phi = r.relation[f];
  Index kernel = rel.compose(a, b, a, phi, rel.converse(a, b, phi));
  Index eq = r.exact ? ox.pred : r.doctrine->delta[a];
  return rel.leq(rel.product(a, a), kernel, eq);
}

Report check_images(const RelationalCategory& r) {
  Report rep("images");
  const FinCat& c = *r.cat;
  std::size_t pullbacks = 0;
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    ++rep.checked;
    ImageFactorization im = image_factorization(r, f);
    if (im.epi == kNone || im.mono == kNone) {
      rep.fail("exists", {{"arrow", c.morphism_name(f)}});
      continue;
    }
    if (c.try_compose(im.mono, im.epi) != f) rep.fail("composite", {{"arrow", c.morphism_name(f)}});
    if (!is_regular_epi(r, im.epi)) rep.fail("epi-part", {{"arrow", c.morphism_name(f)}});
    bool relational = is_relational_mono(r, im.mono);
    bool categorical = is_monic(c, im.mono);
    if (!relational || !categorical)
      rep.fail("mono-part", {{"arrow", c.morphism_name(f)}, {"relational", relational}, {"left_cancellable", categorical}});
    Index image = c.cod(im.epi);
    for (Index w = 0; w < static_cast<Index>(c.num_objects()); ++w)
      for (Index g : c.hom(w, image)) {
        auto pb = find_pullback(c, im.epi, g);
        if (!pb) {
          rep.fail("pullback-exists", {{"epi", c.morphism_name(im.epi)}, {"along", c.morphism_name(g)}});
          continue;
        }
        ++pullbacks;
        ++rep.checked;
        if (!is_regular_epi(r, pb->second))
          rep.fail("pullback-stable", {{"epi", c.morphism_name(im.epi)}, {"along", c.morphism_name(g)}});
      }
  }
  rep.details = {{"arrows", c.num_morphisms()}, {"pullbacks", pullbacks}};
  return rep;
}

bool is_regular_projective(const RelationalCategory& r, Index x, Json* witness) {
  const FinCat& c = *r.cat;
  for (Index psi = 0; psi < static_cast<Index>(c.num_morphisms()); ++psi) {
    if (!is_regular_epi(r, psi)) continue;
    Index src = c.dom(psi), tgt = c.cod(psi);
    for (Index phi : c.hom(x, tgt)) {
      bool lifted = false;
      for (Index xi : c.hom(x, src))
        if (c.try_compose(psi, xi) == phi) {
          lifted = true;
          break;
        }
      if (!lifted) {
        if (witness) *witness = {{"object", c.object_name(x)}, {"epi", c.morphism_name(psi)}, {"arrow", c.morphism_name(phi)}};
        return false;
      }
    }
  }
  return true;
}

namespace {

bool factors(const FinCat& c, Index f, Index g) {
  for (Index u : c.hom(c.dom(f), c.dom(g)))
    if (c.try_compose(g, u) == f) return true;
  return false;
}

}  // namespace

GraphFunctor graph_functor(const RelationalCategory& reg, const PredCategory& pred, const Restriction& sub) {
  GraphFunctor out;
  out.report = Report("graph-functor");
  Report& rep = out.report;
  const Doctrine& p = *reg.doctrine;
  const Relations& rel = *reg.rel;
  const FinCat& pc = *pred.cat;
  const FinCat& base = p.cat();
  Functor& g = out.functor;
  g.source = pred.cat;
  g.target = reg.cat;
  for (const auto& o : pred.objects) {
    Index x = reg.find_object(o.carrier, sub.embed[o.carrier][o.pred]);
    if (x == kNone) throw Error(ErrorCode::kNotASubdoctrine, "a predicate of the subdoctrine has no Reg object");
    g.object_map.push_back(x);
  }
  std::size_t agree = 0;
  for (Index m = 0; m < static_cast<Index>(pc.num_morphisms()); ++m) {
    Index f = pred.arrow_base[m];
    const PredObject& o = pred.objects[pc.dom(m)];
    Index alpha = sub.embed[o.carrier][o.pred];
    Index meet_form = rel.graph(f, alpha);
    Index pairing = base.pair(base.identity(base.dom(f)), f);
    Index exists_form = pairing == kNone ? kNone : exists_along(p, pairing, alpha);
    ++rep.checked;
    if (meet_form != exists_form)
      rep.fail("formulas-agree", {{"arrow", pc.morphism_name(m)}});
    else
      ++agree;
    Index gm = reg.arrow(g.object_map[pc.dom(m)], g.object_map[pc.cod(m)], meet_form);
    if (gm == kNone) rep.fail("arrow-valid", {{"arrow", pc.morphism_name(m)}});
    g.morphism_map.push_back(gm);
  }
  rep.merge(check_functor(g));
  // Faithful.
  const FinCat& rc = *reg.cat;
  for (Index x = 0; x < static_cast<Index>(pc.num_objects()); ++x)
    for (Index y = 0; y < static_cast<Index>(pc.num_objects()); ++y) {
      std::set<Index> images;
      for (Index m : pc.hom(x, y)) {
        ++rep.checked;
        if (!images.insert(g.morphism_map[m]).second) rep.fail("faithful", {{"arrow", pc.morphism_name(m)}});
      }
    }
  // Finite limits: terminal and chosen products go to chosen ones.
  ++rep.checked;
  if (pc.terminal() != kNone && (rc.terminal() == kNone || g.object_map[pc.terminal()] != rc.terminal()))
    rep.fail("preserves-terminal", Json::object());
  for (const auto& [key, pr] : pc.products()) {
    Index x = static_cast<Index>(key >> 32), y = static_cast<Index>(key & 0xffffffffu);
    const Product* q = rc.product(g.object_map[x], g.object_map[y]);
    ++rep.checked;
    if (!q || q->object != g.object_map[pr.object] || q->first != g.morphism_map[pr.first] ||
        q->second != g.morphism_map[pr.second])
      rep.fail("preserves-products", {{"left", pc.object_name(x)}, {"right", pc.object_name(y)}});
  }
  rep.details = {{"arrows", pc.num_morphisms()}, {"formulas_agree", agree}};
  return out;
}

std::vector<std::vector<Index>> slice_representatives(const Doctrine& d) {
  std::vector<std::vector<Index>> reps(d.cat().num_objects());
  for (Index a = 0; a < static_cast<Index>(d.cat().num_objects()); ++a)
    for (const auto& name : d.fiber(a).names) {
      Index f = d.cat().find_morphism(name.substr(1, name.size() - 2));
      if (f == kNone || d.cat().cod(f) != a)
        throw Error(ErrorCode::kMalformedTable, "fiber element '" + name + "' does not name an arrow");
      reps[a].push_back(f);
    }
  return reps;
}

PsiToPcx psi_to_pcx(const DoctrinePtr& psi, const PredCategory& pred_sub, const PredCategory& pred,
                    const Restriction& sub) {
  PsiToPcx out;
  out.report = Report("psi-to-pcx");
  const Doctrine& p = *pred.source;
  const FinCat& sc = *pred_sub.cat;
  auto reps = slice_representatives(*psi);
  DoctrineMorphism& m = out.morphism;
  m.source = psi;
  m.target = pred.doctrine;
  for (const auto& o : pred_sub.objects) m.object_map.push_back(pred.find(o.carrier, sub.embed[o.carrier][o.pred]));
  for (Index f = 0; f < static_cast<Index>(sc.num_morphisms()); ++f)
    m.morphism_map.push_back(pred.arrow(m.object_map[sc.dom(f)], m.object_map[sc.cod(f)], pred_sub.arrow_base[f]));
  // ι of an arrow g: (C,γ) → X is ∃_g(γ), as an element of P_cx over I(X).
  auto iota = [&](Index g) {
    const PredObject& src = pred_sub.objects[sc.dom(g)];
    Index value = exists_along(p, pred_sub.arrow_base[g], sub.embed[src.carrier][src.pred]);
    const auto& fe = pred.fiber_elements[m.object_map[sc.cod(g)]];
    auto it = std::find(fe.begin(), fe.end(), value);
    return it == fe.end() ? kNone : static_cast<Index>(it - fe.begin());
  };
  for (Index x = 0; x < static_cast<Index>(sc.num_objects()); ++x) {
    std::vector<Index> row;
    for (Index g : reps[x]) row.push_back(iota(g));
    m.element_map.push_back(std::move(row));
  }
  // Well-definedness: every arrow of a class has the same image.
  for (Index x = 0; x < static_cast<Index>(sc.num_objects()); ++x)
    for (Index w = 0; w < static_cast<Index>(sc.num_objects()); ++w)
      for (Index g : sc.hom(w, x)) {
        for (std::size_t cls = 0; cls < reps[x].size(); ++cls) {
          Index r = reps[x][cls];
          if (!factors(sc, g, r) || !factors(sc, r, g)) continue;
          ++out.report.checked;
          if (iota(g) != m.element_map[x][cls]) out.report.fail("iota-well-defined", {{"arrow", sc.morphism_name(g)}});
        }
      }
  m.preserves_delta = true;
  m.preserves_exists = true;
  out.report.merge(validate_morphism(m));
  return out;
}

RelationalCategory ex_reg_crosscheck(const CatPtr& regular, const RelOptions& opts) {
  auto sub = std::make_shared<Doctrine>(subobjects_doctrine(regular));
  if (!sub->existential) throw Error(ErrorCode::kNotRegular, "images are missing");
  for (const auto& [pi, row] : sub->exists)
    if (std::find(row.begin(), row.end(), kNone) != row.end())
      throw Error(ErrorCode::kNotRegular, "an image is missing along " + regular->morphism_name(pi));
  RelOptions o = opts;
  o.reflexive_only = true;
  o.carriers.clear();
  return build_relational(sub, o, true);
}

RelationalCategory reg_lex(const CatPtr& c, const RelOptions& opts) {
  return reg_completion(std::make_shared<Doctrine>(weak_subobjects(c)), opts);
}

RelationalCategory ex_lex(const CatPtr& c, const RelOptions& opts) {
  return ex_completion(std::make_shared<Doctrine>(weak_subobjects(c)), opts);
}

Report check_equivalence(const Functor& f) {
  Report rep("equivalence");
  const FinCat& s = *f.source;
  const FinCat& t = *f.target;
  bool faithful = true, full = true, surjective = true;
  for (Index x = 0; x < static_cast<Index>(s.num_objects()); ++x)
    if (f.object_map[x] == kNone) {
      rep.fail("object-map", {{"object", s.object_name(x)}});
      rep.details = {{"faithful", false}, {"full", false}, {"essentially_surjective", false}};
      return rep;
    }
  for (Index x = 0; x < static_cast<Index>(s.num_objects()); ++x)
    for (Index y = 0; y < static_cast<Index>(s.num_objects()); ++y) {
      std::set<Index> images;
      for (Index m : s.hom(x, y)) {
        ++rep.checked;
        if (!images.insert(f.morphism_map[m]).second) {
          faithful = false;
          rep.fail("faithful", {{"arrow", s.morphism_name(m)}});
        }
      }
      for (Index n : t.hom(f.object_map[x], f.object_map[y])) {
        ++rep.checked;
        if (!images.count(n)) {
          full = false;
          rep.fail("full", {{"from", s.object_name(x)}, {"to", s.object_name(y)}, {"missing", t.morphism_name(n)}});
        }
      }
    }
  auto isomorphic = [&](Index a, Index b) {
    for (Index u : t.hom(a, b))
      for (Index v : t.hom(b, a))
        if (t.try_compose(v, u) == t.identity(a) && t.try_compose(u, v) == t.identity(b)) return true;
    return false;
  };
  for (Index z = 0; z < static_cast<Index>(t.num_objects()); ++z) {
    ++rep.checked;
    bool hit = false;
    for (Index x = 0; x < static_cast<Index>(s.num_objects()) && !hit; ++x) hit = isomorphic(f.object_map[x], z);
    if (!hit) {
      surjective = false;
      rep.fail("essentially-surjective", {{"object", t.object_name(z)}});
    }
  }
  rep.details = {{"faithful", faithful}, {"full", full}, {"essentially_surjective", surjective}};
  return rep;
}

Functor induced_functor(const RelationalCategory& from, const RelationalCategory& to,
                        const std::vector<Index>& carrier_map, const std::function<Index(Index, Index)>& iota) {
  Functor g;
  g.source = from.cat;
  g.target = to.cat;
  const FinCat& fc = *from.cat;
  const FinCat& base = from.doctrine->cat();
  for (const auto& o : from.objects) {
    Index fiber = from.exact ? base.product(o.carrier, o.carrier)->object : o.carrier;
    Index carrier = carrier_map[o.carrier];
    g.object_map.push_back(to.find_object(carrier, iota(fiber, o.pred)));
  }
  for (Index m = 0; m < static_cast<Index>(fc.num_morphisms()); ++m) {
    Index x = fc.dom(m), y = fc.cod(m);
    Index xy = base.product(from.objects[x].carrier, from.objects[y].carrier)->object;
    Index gx = g.object_map[x], gy = g.object_map[y];
    g.morphism_map.push_back(gx == kNone || gy == kNone ? kNone : to.arrow(gx, gy, iota(xy, from.relation[m])));
  }
  return g;
}

Functor ex_comparison(const RelationalCategory& ex, const RelationalCategory& reg, const RelationalCategory& ex_reg) {
  Functor g;
  g.source = ex.cat;
  g.target = ex_reg.cat;
  const Doctrine& p = *ex.doctrine;
  const FinCat& base = p.cat();
  const FinCat& rc = *reg.cat;
  const Doctrine& sub = *ex_reg.doctrine;
  // Subobject of reg's chosen product X×Y given by (A×B, φ) ↪ (A×B, box).
  auto subobject = [&](Index x, Index y, Index phi) -> Index {
    const Product* xy = rc.product(x, y);
    if (xy == nullptr) return kNone;
    const Index ab = reg.objects[xy->object].carrier;
    Index inner = reg.find_object(ab, phi);
    if (inner == kNone) return kNone;
    Index m = reg.arrow(inner, xy->object, reg.rel->identity(ab, phi));
    if (m == kNone) return kNone;
    return exists_along(sub, m, sub.top(inner));
  };
  std::vector<Index> support(ex.objects.size(), kNone);
  for (std::size_t i = 0; i < ex.objects.size(); ++i) {
    const auto& o = ex.objects[i];
    const Index a = o.carrier;
    const Product* aa = base.product(a, a);
    Index e = aa == nullptr ? kNone : p.ex(aa->first, o.pred);
    support[i] = e == kNone ? kNone : reg.find_object(a, e);
    Index eq = support[i] == kNone ? kNone : subobject(support[i], support[i], o.pred);
    g.object_map.push_back(eq == kNone ? kNone : ex_reg.find_object(support[i], eq));
  }
  for (Index m = 0; m < static_cast<Index>(ex.cat->num_morphisms()); ++m) {
    Index x = ex.cat->dom(m), y = ex.cat->cod(m);
    Index gx = g.object_map[x], gy = g.object_map[y];
    Index phi = gx == kNone || gy == kNone ? kNone : subobject(support[x], support[y], ex.relation[m]);
    g.morphism_map.push_back(phi == kNone ? kNone : ex_reg.arrow(gx, gy, phi));
  }
  return g;
}

}  // namespace doctrina
