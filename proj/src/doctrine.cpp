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

#include "doctrina/doctrine.hpp"

#include <algorithm>

namespace doctrina {

Index Doctrine::meet(Index a, Index x, Index y) const {
  if (x == kNone || y == kNone) return kNone;
  return fibers[a].meet(x, y);
}

Index Doctrine::re(Index f, Index x) const {
  if (x == kNone || f == kNone) return kNone;
  return reindex[f][x];
}

Index Doctrine::ex(Index proj, Index x) const {
  if (x == kNone) return kNone;
  auto it = exists.find(proj);
  return it == exists.end() ? kNone : it->second[x];
}

std::vector<Index> projections(const FinCat& cat) {
  std::vector<Index> out;
  for (const auto& [key, p] : cat.products()) {
    if (p.first != kNone) out.push_back(p.first);
    if (p.second != kNone) out.push_back(p.second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Level parse_level(const std::string& text) {
  if (text == "primary") return Level::kPrimary;
  if (text == "elementary") return Level::kElementary;
  if (text == "existential") return Level::kExistential;
  throw Error(ErrorCode::kUsage, "unknown level '" + text + "'");
}

namespace {

// Products in a deterministic order (by first then second factor).
std::vector<std::pair<std::pair<Index, Index>, Product>> sorted_products(const FinCat& cat) {
  std::vector<std::pair<std::pair<Index, Index>, Product>> out;
  for (const auto& [key, p] : cat.products())
    out.push_back({{static_cast<Index>(key >> 32), static_cast<Index>(key & 0xffffffffu)}, p});
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

Json elem(const Doctrine& p, Index a, Index x) {
  return p.cat().object_name(a) + ":" + p.fiber(a).names[x];
}

void check_primary(const Doctrine& p, Report& r) {
  const FinCat& c = p.cat();
  const auto n = static_cast<Index>(c.num_objects());
  for (Index a = 0; a < n; ++a) {
    Report f = p.fiber(a).validate();
    f.check = "fiber:" + c.object_name(a);
    r.merge(f);
  }
  const auto m = static_cast<Index>(c.num_morphisms());
  for (Index f = 0; f < m; ++f) {
    const Index a = c.dom(f), b = c.cod(f);
    const auto nb = static_cast<Index>(p.size(b));
    if (p.reindex[f].size() != static_cast<std::size_t>(nb)) {
      r.fail("reindex-table", {{"arrow", c.morphism_name(f)}});
      continue;
    }
    if (c.is_identity(f)) {
      for (Index x = 0; x < nb; ++x) {
        ++r.checked;
        if (p.re(f, x) != x) r.fail("identity", {{"arrow", c.morphism_name(f)}, {"element", elem(p, b, x)}});
      }
    }
    ++r.checked;
    if (p.re(f, p.top(b)) != p.top(a)) r.fail("top-preservation", {{"arrow", c.morphism_name(f)}});
    for (Index x = 0; x < nb; ++x)
      for (Index y = 0; y < nb; ++y) {
        Index fx = p.re(f, x), fy = p.re(f, y);
        if (fx == kNone || fy == kNone) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        if (p.leq(b, x, y) && !p.leq(a, fx, fy))
          r.fail("monotone", {{"arrow", c.morphism_name(f)}, {"pair", {elem(p, b, x), elem(p, b, y)}}});
        Index xy = p.meet(b, x, y);
        Index fxy = p.re(f, xy);
        if (fxy == kNone) {
          ++r.skipped;
          continue;
        }
        // P_f(x∧y) must be the greatest lower bound of P_f x and P_f y.
        bool ok = p.leq(a, fxy, fx) && p.leq(a, fxy, fy);
        for (Index z = 0; z < static_cast<Index>(p.size(a)) && ok; ++z)
          if (p.leq(a, z, fx) && p.leq(a, z, fy) && !p.leq(a, z, fxy)) ok = false;
        if (!ok) r.fail("meet-preservation", {{"arrow", c.morphism_name(f)}, {"pair", {elem(p, b, x), elem(p, b, y)}}});
      }
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index f : c.hom(a, b))
        for (Index d = 0; d < n; ++d)
          for (Index g : c.hom(b, d)) {
            Index gf = c.try_compose(g, f);
            if (gf == kNone) {
              r.skipped += p.size(d);
              continue;
            }
            for (Index x = 0; x < static_cast<Index>(p.size(d)); ++x) {
              Index lhs = p.re(gf, x), rhs = p.re(f, p.re(g, x));
              if (lhs == kNone || rhs == kNone) {
                ++r.skipped;
                continue;
              }
              ++r.checked;
              if (lhs != rhs)
                r.fail("functoriality", {{"arrows", {c.morphism_name(g), c.morphism_name(f)}}, {"element", elem(p, d, x)}});
            }
          }
}

void check_elementary(const Doctrine& p, Report& r) {
  const FinCat& c = p.cat();
  const auto n = static_cast<Index>(c.num_objects());
  for (Index a = 0; a < n; ++a) {
    const Product* aa = c.product(a, a);
    Index diag = c.diagonal(a);
    Index d = p.delta[a];
    if (aa == nullptr || diag == kNone || d == kNone) {
      ++r.skipped;
      continue;
    }
    for (Index x = 0; x < static_cast<Index>(p.size(a)); ++x)
      for (Index y = 0; y < static_cast<Index>(p.size(aa->object)); ++y) {
        Index lhs_r = p.re(diag, y);
        Index ex = p.meet(aa->object, p.re(aa->first, x), d);
        if (lhs_r == kNone || ex == kNone) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        if (p.leq(a, x, lhs_r) != p.leq(aa->object, ex, y))
          r.fail("elementary-diagonal", {{"object", c.object_name(a)}, {"alpha", elem(p, a, x)},
                                         {"beta", elem(p, aa->object, y)}, {"exists", elem(p, aa->object, ex)}});
      }
  }
  // Condition on e = ⟨id_{X×A}, π_A⟩: X×A → (X×A)×A for every X.
  for (Index x = 0; x < n; ++x)
    for (Index a = 0; a < n; ++a) {
      const Product* xa = c.product(x, a);
      const Product* aa = c.product(a, a);
      if (xa == nullptr || aa == nullptr || p.delta[a] == kNone) {
        ++r.skipped;
        continue;
      }
      const Product* xaa = c.product(xa->object, a);
      if (xaa == nullptr) {
        ++r.skipped;
        continue;
      }
      Index e = c.pair(c.identity(xa->object), xa->second);
      Index inner = c.try_compose(xa->second, xaa->first);
      Index dmap = c.pair(inner, xaa->second);
      if (e == kNone || dmap == kNone) {
        ++r.skipped;
        continue;
      }
      Index dd = p.re(dmap, p.delta[a]);
      for (Index u = 0; u < static_cast<Index>(p.size(xa->object)); ++u)
        for (Index v = 0; v < static_cast<Index>(p.size(xaa->object)); ++v) {
          Index ev = p.re(e, v);
          Index ex = p.meet(xaa->object, p.re(xaa->first, u), dd);
          if (ev == kNone || ex == kNone) {
            ++r.skipped;
            continue;
          }
          ++r.checked;
          if (p.leq(xa->object, u, ev) != p.leq(xaa->object, ex, v))
            r.fail("elementary-parametric", {{"objects", {c.object_name(x), c.object_name(a)}},
                                             {"alpha", elem(p, xa->object, u)}, {"beta", elem(p, xaa->object, v)}});
        }
    }
}

// BCC, adjointness and FR for one projection π: P → A of the product (l, r).
void check_projection(const Doctrine& p, Report& r, Index prod, Index pi, Index target, bool first,
                      Index other) {
  const FinCat& c = p.cat();
  if (p.exists.find(pi) == p.exists.end()) {
    r.fail("exists-table", {{"projection", c.morphism_name(pi)}});
    return;
  }
  const auto np = static_cast<Index>(p.size(prod));
  const auto na = static_cast<Index>(p.size(target));
  for (Index g = 0; g < np; ++g) {
    Index e = p.ex(pi, g);
    for (Index x = 0; x < na; ++x) {
      Index px = p.re(pi, x);
      if (e == kNone || px == kNone) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      if (p.leq(target, e, x) != p.leq(prod, g, px))
        r.fail("exists-adjoint", {{"projection", c.morphism_name(pi)}, {"beta", elem(p, prod, g)},
                                  {"alpha", elem(p, target, x)}});
      Index lhs = p.ex(pi, p.meet(prod, px, g));
      Index rhs = p.meet(target, x, e);
      if (lhs == kNone || rhs == kNone) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      if (lhs != rhs)
        r.fail("frobenius", {{"projection", c.morphism_name(pi)}, {"alpha", elem(p, target, x)},
                             {"beta", elem(p, prod, g)}});
    }
  }
  // BCC along f: X → target, realized by the square with f×id (or id×f).
  const auto n = static_cast<Index>(c.num_objects());
  for (Index xo = 0; xo < n; ++xo)
    for (Index f : c.hom(xo, target)) {
      const Product* q = first ? c.product(xo, other) : c.product(other, xo);
      if (q == nullptr) {
        r.skipped += static_cast<std::size_t>(np);
        continue;
      }
      Index fx = first ? c.cross(f, c.identity(other)) : c.cross(c.identity(other), f);
      Index pi2 = first ? q->first : q->second;
      if (fx == kNone) {
        r.skipped += static_cast<std::size_t>(np);
        continue;
      }
      for (Index g = 0; g < np; ++g) {
        Index lhs = p.ex(pi2, p.re(fx, g));
        Index rhs = p.re(f, p.ex(pi, g));
        if (lhs == kNone || rhs == kNone) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        if (lhs != rhs)
          r.fail("beck-chevalley", {{"projection", c.morphism_name(pi)}, {"along", c.morphism_name(f)},
                                    {"alpha", elem(p, prod, g)}});
      }
    }
}

}  // namespace

Report validate_doctrine(const Doctrine& p, Level level) {
  if (level == Level::kElementary && !p.elementary())
    throw Error(ErrorCode::kMissingStructure, "doctrine '" + p.name + "' has no equality table");
  if (level == Level::kExistential && !p.existential)
    throw Error(ErrorCode::kMissingStructure, "doctrine '" + p.name + "' has no existential tables");
  Report r("doctrine");
  r.details["doctrine"] = p.name;
  r.details["level"] = level == Level::kPrimary ? "primary" : level == Level::kElementary ? "elementary" : "existential";
  check_primary(p, r);
  if (level != Level::kPrimary && p.elementary()) check_elementary(p, r);
  if (level == Level::kExistential) {
    for (const auto& [ab, prod] : sorted_products(p.cat())) {
      if (prod.first != kNone) check_projection(p, r, prod.object, prod.first, ab.first, true, ab.second);
      if (prod.second != kNone) check_projection(p, r, prod.object, prod.second, ab.second, false, ab.first);
    }
  }
  return r;
}

Index exists_along(const Doctrine& p, Index f, Index alpha) {
  if (!p.elementary() || !p.existential)
    throw Error(ErrorCode::kMissingStructure, "exists_along needs equality and existential tables");
  const FinCat& c = p.cat();
  const Index a = c.dom(f), b = c.cod(f);
  const Product* ab = c.product(a, b);
  if (ab == nullptr || p.delta[b] == kNone) return kNone;
  Index fx = c.cross(f, c.identity(b));
  if (fx == kNone) return kNone;
  Index m = p.meet(ab->object, p.re(fx, p.delta[b]), p.re(ab->first, alpha));
  return p.ex(ab->second, m);
}

Report check_exists_along(const Doctrine& p) {
  Report r("exists-along");
  const FinCat& c = p.cat();
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    const Index a = c.dom(f), b = c.cod(f);
    for (Index x = 0; x < static_cast<Index>(p.size(a)); ++x) {
      Index e = exists_along(p, f, x);
      for (Index y = 0; y < static_cast<Index>(p.size(b)); ++y) {
        Index fy = p.re(f, y);
        if (e == kNone || fy == kNone) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        if (p.leq(a, x, fy) != p.leq(b, e, y))
          r.fail("adjunction", {{"arrow", c.morphism_name(f)}, {"alpha", elem(p, a, x)}, {"beta", elem(p, b, y)}});
      }
    }
  }
  return r;
}

bool Subdoctrine::contains(Index a, Index x) const {
  const auto& v = elements.at(a);
  return std::binary_search(v.begin(), v.end(), x);
}

Subdoctrine Subdoctrine::whole(const Doctrine& p) {
  Subdoctrine s;
  for (Index a = 0; a < static_cast<Index>(p.fibers.size()); ++a) {
    std::vector<Index> v(p.size(a));
    for (Index x = 0; x < static_cast<Index>(v.size()); ++x) v[x] = x;
    s.elements.push_back(std::move(v));
  }
  return s;
}

Subdoctrine Subdoctrine::tops(const Doctrine& p) {
  Subdoctrine s;
  for (Index a = 0; a < static_cast<Index>(p.fibers.size()); ++a) s.elements.push_back({p.top(a)});
  return s;
}

Report validate_subdoctrine(const Doctrine& p, const Subdoctrine& s) {
  Report r("subdoctrine");
  const FinCat& c = p.cat();
  if (s.elements.size() != c.num_objects()) {
    r.fail("shape", {{"objects", s.elements.size()}});
    return r;
  }
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a) {
    ++r.checked;
    if (!s.contains(a, p.top(a))) r.fail("top", {{"object", c.object_name(a)}});
    for (Index x : s.elements[a])
      for (Index y : s.elements[a]) {
        Index m = p.meet(a, x, y);
        if (m == kNone) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        if (!s.contains(a, m)) r.fail("meet", {{"pair", {elem(p, a, x), elem(p, a, y)}}});
      }
  }
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f)
    for (Index x : s.elements[c.cod(f)]) {
      Index fx = p.re(f, x);
      if (fx == kNone) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      if (!s.contains(c.dom(f), fx)) r.fail("reindex", {{"arrow", c.morphism_name(f)}, {"element", elem(p, c.cod(f), x)}});
    }
  return r;
}

Restriction restrict(const Doctrine& p, const Subdoctrine& s) {
  Restriction out;
  Doctrine& d = out.doctrine;
  d.name = p.name + "|sub";
  d.base = p.base;
  const FinCat& c = p.cat();
  const auto n = static_cast<Index>(c.num_objects());
  out.embed = s.elements;
  out.project.resize(n);
  for (Index a = 0; a < n; ++a) {
    out.project[a].assign(p.size(a), kNone);
    for (Index i = 0; i < static_cast<Index>(s.elements[a].size()); ++i) out.project[a][s.elements[a][i]] = i;
  }
  for (Index a = 0; a < n; ++a) {
    const auto& sel = s.elements[a];
    const std::size_t k = sel.size();
    MeetSL m;
    m.order.assign(k * k, 0);
    m.meets.assign(k * k, kNone);
    for (Index x : sel) m.names.push_back(p.fiber(a).names[x]);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        m.order[i * k + j] = p.leq(a, sel[i], sel[j]) ? 1 : 0;
        Index mm = p.meet(a, sel[i], sel[j]);
        m.meets[i * k + j] = mm == kNone ? kNone : out.project[a][mm];
      }
    m.top = out.project[a][p.top(a)];
    d.fibers.push_back(std::move(m));
  }
  d.reindex.resize(c.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f)
    for (Index x : s.elements[c.cod(f)]) {
      Index fx = p.re(f, x);
      d.reindex[f].push_back(fx == kNone ? kNone : out.project[c.dom(f)][fx]);
    }
  if (p.elementary()) {
    bool all = true;
    std::vector<Index> delta(n, kNone);
    for (Index a = 0; a < n; ++a) {
      if (p.delta[a] == kNone) continue;
      const Product* aa = c.product(a, a);
      Index v = out.project[aa->object][p.delta[a]];
      if (v == kNone) all = false;
      delta[a] = v;
    }
    if (all) d.delta = std::move(delta);
  }
  return out;
}

DoctrineMorphism identity_morphism(const DoctrinePtr& p) {
  return inclusion_morphism(p, p, Subdoctrine::whole(*p).elements);
}

DoctrineMorphism inclusion_morphism(const DoctrinePtr& sub, const DoctrinePtr& parent,
                                    const std::vector<std::vector<Index>>& embed) {
  DoctrineMorphism m;
  m.source = sub;
  m.target = parent;
  for (Index a = 0; a < static_cast<Index>(sub->cat().num_objects()); ++a) m.object_map.push_back(a);
  for (Index f = 0; f < static_cast<Index>(sub->cat().num_morphisms()); ++f) m.morphism_map.push_back(f);
  m.element_map = embed;
  m.preserves_delta = sub->elementary() && parent->elementary();
  m.preserves_exists = sub->existential && parent->existential;
  return m;
}

Report validate_morphism(const DoctrineMorphism& m) {
  Report r("morphism");
  const Doctrine& s = *m.source;
  const Doctrine& t = *m.target;
  const FinCat& c = s.cat();
  const FinCat& d = t.cat();
  const auto n = static_cast<Index>(c.num_objects());
  auto fo = [&](Index a) { return m.object_map[a]; };
  auto fm = [&](Index f) { return m.morphism_map[f]; };
  auto b = [&](Index a, Index x) { return x == kNone ? kNone : m.element_map[a][x]; };
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    ++r.checked;
    if (d.dom(fm(f)) != fo(c.dom(f)) || d.cod(fm(f)) != fo(c.cod(f)))
      r.fail("functor-typing", {{"arrow", c.morphism_name(f)}});
    if (c.is_identity(f) && !d.is_identity(fm(f))) r.fail("functor-identity", {{"arrow", c.morphism_name(f)}});
  }
  for (Index a = 0; a < n; ++a)
    for (Index bb = 0; bb < n; ++bb)
      for (Index f : c.hom(a, bb))
        for (Index e = 0; e < n; ++e)
          for (Index g : c.hom(bb, e)) {
            Index gf = c.try_compose(g, f);
            if (gf == kNone) continue;
            ++r.checked;
            if (fm(gf) != d.try_compose(fm(g), fm(f)))
              r.fail("functor-composition", {{"arrows", {c.morphism_name(g), c.morphism_name(f)}}});
          }
  if (c.terminal() != kNone && fo(c.terminal()) != d.terminal()) r.fail("product-preservation", {{"terminal", false}});
  for (const auto& [ab, p] : sorted_products(c)) {
    ++r.checked;
    const Product* q = d.product(fo(ab.first), fo(ab.second));
    if (q == nullptr || q->object != fo(p.object) || q->first != fm(p.first) || q->second != fm(p.second))
      r.fail("product-preservation", {{"pair", {c.object_name(ab.first), c.object_name(ab.second)}}});
  }
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    const Index a = c.dom(f), bb = c.cod(f);
    for (Index x = 0; x < static_cast<Index>(s.size(bb)); ++x) {
      Index lhs = b(a, s.re(f, x)), rhs = t.re(fm(f), b(bb, x));
      if (lhs == kNone || rhs == kNone) {
        ++r.skipped;
        continue;
      }
      ++r.checked;
      if (lhs != rhs) r.fail("naturality", {{"arrow", c.morphism_name(f)}, {"element", elem(s, bb, x)}});
    }
  }
  for (Index a = 0; a < n; ++a) {
    ++r.checked;
    if (b(a, s.top(a)) != t.top(fo(a))) r.fail("top-preservation", {{"object", c.object_name(a)}});
    for (Index x = 0; x < static_cast<Index>(s.size(a)); ++x)
      for (Index y = 0; y < static_cast<Index>(s.size(a)); ++y) {
        Index lhs = b(a, s.meet(a, x, y)), rhs = t.meet(fo(a), b(a, x), b(a, y));
        if (lhs == kNone || rhs == kNone) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        if (lhs != rhs) r.fail("meet-preservation", {{"pair", {elem(s, a, x), elem(s, a, y)}}});
      }
  }
  bool delta_ok = s.elementary() && t.elementary();
  if (delta_ok) {
    for (Index a = 0; a < n; ++a) {
      const Product* aa = c.product(a, a);
      if (aa == nullptr || s.delta[a] == kNone) continue;
      if (b(aa->object, s.delta[a]) != t.delta[fo(a)]) {
        delta_ok = false;
        if (m.preserves_delta) r.fail("delta-preservation", {{"object", c.object_name(a)}});
      }
    }
  } else if (m.preserves_delta) {
    r.fail("delta-preservation", {{"reason", "equality structure missing"}});
  }
  bool exists_ok = s.existential && t.existential;
  if (exists_ok) {
    for (Index pi : projections(c))
      for (Index x = 0; x < static_cast<Index>(s.size(c.dom(pi))); ++x) {
        Index lhs = b(c.cod(pi), s.ex(pi, x)), rhs = t.ex(fm(pi), b(c.dom(pi), x));
        if (lhs == kNone || rhs == kNone) {
          ++r.skipped;
          continue;
        }
        ++r.checked;
        if (lhs != rhs) {
          exists_ok = false;
          if (m.preserves_exists)
            r.fail("exists-preservation", {{"projection", c.morphism_name(pi)}, {"element", elem(s, c.dom(pi), x)}});
        }
      }
  } else if (m.preserves_exists) {
    r.fail("exists-preservation", {{"reason", "existential structure missing"}});
  }
  r.details["preserves_delta"] = delta_ok;
  r.details["preserves_exists"] = exists_ok;
  return r;
}

namespace {

bool factors_through(const FinCat& c, Index f, Index g) {
  for (Index h : c.hom(c.dom(f), c.dom(g)))
    if (c.try_compose(g, h) == f) return true;
  return false;
}

bool is_mono(const FinCat& c, Index f) {
  const Index x = c.dom(f);
  for (Index w = 0; w < static_cast<Index>(c.num_objects()); ++w) {
    const auto& hs = c.hom(w, x);
    std::vector<Index> images;
    for (Index g : hs) images.push_back(c.try_compose(f, g));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  }
  return true;
}

// Fibers of slice classes over a chosen family of arrows (all arrows for Ψ,
// monos for Sub); `cls[f]` is the class of candidate f in P(cod f).
struct SliceTables {
  std::vector<std::vector<Index>> reps;
  std::vector<Index> cls;
};

SliceTables build_slices(Doctrine& d, const std::vector<std::uint8_t>& candidate) {
  const FinCat& c = d.cat();
  const auto n = static_cast<Index>(c.num_objects());
  SliceTables t;
  t.cls.assign(c.num_morphisms(), kNone);
  t.reps.resize(n);
  for (Index a = 0; a < n; ++a) {
    std::vector<Index> arrows;
    for (Index x = 0; x < n; ++x)
      for (Index f : c.hom(x, a))
        if (candidate[f]) arrows.push_back(f);
    PosetReflection refl = poset_reflection(arrows.size(), [&](Index i, Index j) {
      return factors_through(c, arrows[i], arrows[j]);
    });
    std::vector<std::string> names;
    for (Index r : refl.representative) {
      t.reps[a].push_back(arrows[r]);
      names.push_back("[" + c.morphism_name(arrows[r]) + "]");
    }
    for (std::size_t i = 0; i < arrows.size(); ++i) t.cls[arrows[i]] = refl.class_of[i];
    d.fibers.push_back(MeetSL::from_order(std::move(names), refl.order));
  }
  return t;
}

// Greatest class of candidates q into cod k with k∘q factoring through g.
Index pullback_class(const Doctrine& d, const SliceTables& t, const std::vector<std::uint8_t>& candidate,
                     Index k, Index g) {
  const FinCat& c = d.cat();
  const Index b = c.dom(k);
  std::vector<Index> found;
  for (Index x = 0; x < static_cast<Index>(c.num_objects()); ++x)
    for (Index q : c.hom(x, b)) {
      if (!candidate[q] || std::find(found.begin(), found.end(), t.cls[q]) != found.end()) continue;
      Index kq = c.try_compose(k, q);
      bool ok = false;
      for (Index pp : c.hom(x, c.dom(g)))
        if (c.try_compose(g, pp) == kq) {
          ok = true;
          break;
        }
      if (ok) found.push_back(t.cls[q]);
    }
  for (Index m : found) {
    bool greatest = true;
    for (Index o : found) greatest = greatest && d.leq(b, o, m);
    if (greatest) return m;
  }
  return kNone;
}

}  // namespace

Doctrine weak_subobjects(const CatPtr& cat) {
  Doctrine d;
  d.name = "weak-subobjects";
  d.base = cat;
  const FinCat& c = *cat;
  std::vector<std::uint8_t> all(c.num_morphisms(), 1);
  SliceTables t = build_slices(d, all);
  d.reindex.resize(c.num_morphisms());
  for (Index k = 0; k < static_cast<Index>(c.num_morphisms()); ++k)
    for (Index g : t.reps[c.cod(k)]) {
      Index v = pullback_class(d, t, all, k, g);
      if (v == kNone)
        throw Error(ErrorCode::kNoWeakPullback,
                    "no weak pullback of " + c.morphism_name(k) + " and " + c.morphism_name(g));
      d.reindex[k].push_back(v);
    }
  d.delta.assign(c.num_objects(), kNone);
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a) {
    Index diag = c.diagonal(a);
    if (diag != kNone) d.delta[a] = t.cls[diag];
  }
  for (Index pi : projections(c))
    for (Index g : t.reps[c.dom(pi)]) d.exists[pi].push_back(t.cls[c.compose(pi, g)]);
  d.existential = true;
  return d;
}

Doctrine subobjects_doctrine(const CatPtr& cat) {
  Doctrine d;
  d.name = "subobjects";
  d.base = cat;
  const FinCat& c = *cat;
  std::vector<std::uint8_t> mono(c.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) mono[f] = is_mono(c, f) ? 1 : 0;
  SliceTables t = build_slices(d, mono);
  d.reindex.resize(c.num_morphisms());
  for (Index k = 0; k < static_cast<Index>(c.num_morphisms()); ++k)
    for (Index g : t.reps[c.cod(k)]) d.reindex[k].push_back(pullback_class(d, t, mono, k, g));
  d.delta.assign(c.num_objects(), kNone);
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a) {
    Index diag = c.diagonal(a);
    if (diag != kNone) d.delta[a] = t.cls[diag];
  }
  // Images: least mono class through which π∘m factors.
  bool images = true;
  for (Index pi : projections(c)) {
    const Index a = c.cod(pi);
    for (Index g : t.reps[c.dom(pi)]) {
      Index pg = c.compose(pi, g);
      Index least = kNone;
      for (Index cls = 0; cls < static_cast<Index>(d.size(a)) && least == kNone; ++cls) {
        if (!factors_through(c, pg, t.reps[a][cls])) continue;
        bool ok = true;
        for (Index o = 0; o < static_cast<Index>(d.size(a)) && ok; ++o)
          if (factors_through(c, pg, t.reps[a][o]) && !d.leq(a, cls, o)) ok = false;
        if (ok) least = cls;
      }
      if (least == kNone) images = false;
      d.exists[pi].push_back(least);
    }
  }
  if (images) {
    d.existential = true;
  } else {
    d.exists.clear();
  }
  return d;
}

LocalicDoctrine::LocalicDoctrine(std::vector<std::string> levels, GenCat base)
    : levels_(std::move(levels)), base_(std::move(base)) {
  if (levels_.size() < 2) throw Error(ErrorCode::kMalformedTable, "the chain needs a top and a bottom");
}

bool LocalicDoctrine::leq(const Valuation& x, const Valuation& y) const {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

LocalicDoctrine::Valuation LocalicDoctrine::meet(const Valuation& x, const Valuation& y) const {
  Valuation z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = std::min(x[i], y[i]);
  return z;
}

LocalicDoctrine::Valuation LocalicDoctrine::top(const GenCat::Word& a) const {
  return Valuation(base_.cardinality(a), static_cast<int>(levels_.size()) - 1);
}

LocalicDoctrine::Valuation LocalicDoctrine::reindex(const std::vector<int>& image, const Valuation& x) const {
  Valuation z(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) z[i] = x[image[i]];
  return z;
}

LocalicDoctrine::Valuation LocalicDoctrine::exists_first(const GenCat::Word& a, const GenCat::Word& b,
                                                         const Valuation& x) const {
  const std::size_t na = base_.cardinality(a), nb = base_.cardinality(b);
  Valuation z(na, 0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) z[i] = std::max(z[i], x[i * nb + j]);
  return z;
}

LocalicDoctrine::Valuation LocalicDoctrine::delta(const GenCat::Word& a) const {
  const std::size_t n = base_.cardinality(a);
  Valuation z(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = static_cast<int>(levels_.size()) - 1;
  return z;
}

std::vector<int> LocalicDoctrine::epsilon(const GenCat::Word& a, const GenCat::Word& b, const Valuation& x) const {
  const std::size_t na = base_.cardinality(a), nb = base_.cardinality(b);
  std::vector<int> choice(na, 0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 1; j < nb; ++j)
      if (x[i * nb + j] > x[i * nb + choice[i]]) choice[i] = static_cast<int>(j);
  return choice;
}

std::size_t LocalicDoctrine::encode(const Valuation& x) const {
  std::size_t r = 0;
  for (int v : x) r = r * levels_.size() + static_cast<std::size_t>(v);
  return r;
}

LocalicDoctrine::Valuation LocalicDoctrine::decode(std::size_t size, std::size_t index) const {
  Valuation x(size);
  for (std::size_t i = size; i-- > 0;) {
    x[i] = static_cast<int>(index % levels_.size());
    index /= levels_.size();
  }
  return x;
}

Doctrine LocalicDoctrine::materialize(std::size_t bound) const {
  constexpr std::size_t kFiberBudget = 1u << 16;
  auto cat = std::make_shared<FinCat>(base_.materialize(bound));
  const auto words = base_.materialized_words(bound);
  const auto n = static_cast<Index>(words.size());
  Doctrine d;
  d.name = "localic";
  d.base = cat;
  std::vector<std::size_t> card(n), fsize(n);
  for (Index a = 0; a < n; ++a) {
    card[a] = base_.cardinality(words[a]);
    std::size_t s = 1;
    for (std::size_t i = 0; i < card[a]; ++i) {
      s *= levels_.size();
      if (s > kFiberBudget) throw Error(ErrorCode::kFiberTooLarge, "fiber over " + base_.word_name(words[a]) + " exceeds budget");
    }
    fsize[a] = s;
    MeetSL m;
    m.order.assign(s * s, 0);
    m.meets.assign(s * s, kNone);
    for (std::size_t i = 0; i < s; ++i) {
      Valuation x = decode(card[a], i);
      std::string name = "[";
      for (std::size_t t = 0; t < x.size(); ++t) name += (t ? "," : "") + levels_[x[t]];
      m.names.push_back(name + "]");
      for (std::size_t j = 0; j < s; ++j) {
        Valuation y = decode(card[a], j);
        m.order[i * s + j] = leq(x, y) ? 1 : 0;
        m.meets[i * s + j] = static_cast<Index>(encode(meet(x, y)));
      }
    }
    m.top = static_cast<Index>(s - 1);
    d.fibers.push_back(std::move(m));
  }
  // The image of an arrow is its rank within its hom set read in base |cod|.
  std::vector<std::vector<int>> images(cat->num_morphisms());
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const auto& hs = cat->hom(a, b);
      for (std::size_t r = 0; r < hs.size(); ++r) {
        std::vector<int> img(card[a]);
        std::size_t v = r;
        for (std::size_t i = card[a]; i-- > 0;) {
          img[i] = static_cast<int>(v % card[b]);
          v /= card[b];
        }
        images[hs[r]] = std::move(img);
      }
    }
  d.reindex.resize(cat->num_morphisms());
  for (Index f = 0; f < static_cast<Index>(cat->num_morphisms()); ++f) {
    const Index b = cat->cod(f);
    for (std::size_t x = 0; x < fsize[b]; ++x)
      d.reindex[f].push_back(static_cast<Index>(encode(reindex(images[f], decode(card[b], x)))));
  }
  d.delta.assign(n, kNone);
  for (Index a = 0; a < n; ++a)
    if (cat->product(a, a) != nullptr) d.delta[a] = static_cast<Index>(encode(delta(words[a])));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const Product* p = cat->product(a, b);
      if (p == nullptr) continue;
      const std::size_t ps = fsize[p->object];
      if (!d.exists.count(p->first)) {
        auto& tab = d.exists[p->first];
        for (std::size_t x = 0; x < ps; ++x)
          tab.push_back(static_cast<Index>(encode(exists_first(words[a], words[b], decode(card[p->object], x)))));
      }
      if (!d.exists.count(p->second)) {
        auto& tab = d.exists[p->second];
        for (std::size_t x = 0; x < ps; ++x) {
          Valuation v = decode(card[p->object], x);
          Valuation z(card[b], 0);
          for (std::size_t i = 0; i < card[a]; ++i)
            for (std::size_t j = 0; j < card[b]; ++j) z[j] = std::max(z[j], v[i * card[b] + j]);
          tab.push_back(static_cast<Index>(encode(z)));
        }
      }
    }
  d.existential = true;
  return d;
}

}  // namespace doctrina
