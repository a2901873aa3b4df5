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

#include "doctrina/charax.hpp"

#include <algorithm>

namespace doctrina {

namespace {

std::string element_name(const Doctrine& p, Index a, Index x) {
  return p.cat().object_name(a) + ":" + p.fiber(a).names[x];
}

std::vector<Index> candidates(const Doctrine& p, Index a, const Subdoctrine* sub) {
  if (sub) return sub->elements[a];
  std::vector<Index> all(p.size(a));
  for (Index i = 0; i < static_cast<Index>(all.size()); ++i) all[i] = i;
  return all;
}

// First h: A→B with test(P_⟨id,h⟩(β)), or kNone.
template <typename Test>
Index find_section(const Doctrine& p, Index a, Index b, Index beta, Test test) {
  const FinCat& c = p.cat();
  for (Index h : c.hom(a, b)) {
    Index v = p.re(c.pair(c.identity(a), h), beta);
    if (v != kNone && test(v)) return h;
  }
  return kNone;
}

}  // namespace

SplitReport is_splitting(const Doctrine& p, Index a, Index alpha, const Subdoctrine* relative) {
  SplitReport r;
  r.object = a;
  r.element = alpha;
  const FinCat& c = p.cat();
  Json failure, prop_failure, success;
  for (Index b = 0; b < static_cast<Index>(c.num_objects()); ++b) {
    const Product* pr = c.product(a, b);
    if (!pr) continue;
    for (Index beta : candidates(p, pr->object, relative)) {
      Index e = p.ex(pr->first, beta);
      if (e == kNone) continue;
      Json hyp = {{"projection", c.morphism_name(pr->first)}, {"aux", c.object_name(b)},
                  {"beta", element_name(p, pr->object, beta)}};
      if (e == alpha) {
        Index h = find_section(p, a, b, beta, [&](Index v) { return v == alpha; });
        if (h == kNone) {
          r.verdict = false;
          if (failure.is_null()) failure = hyp;
        } else if (success.is_null()) {
          success = hyp;
          success["h"] = c.morphism_name(h);
        }
      }
      if (!relative && p.leq(a, alpha, e)) {
        Index h = find_section(p, a, b, beta, [&](Index v) { return p.leq(a, alpha, v); });
        if (h == kNone) {
          r.prop_verdict = false;
          if (prop_failure.is_null()) prop_failure = hyp;
        }
      }
    }
  }
  if (!r.verdict) r.witness = failure;
  else if (!r.prop_verdict) r.witness = prop_failure;
  else r.witness = success.is_null() ? Json::object() : success;
  return r;
}

bool is_free(const Doctrine& p, Index a, Index alpha, Json* witness) {
  const FinCat& c = p.cat();
  for (Index b = 0; b < static_cast<Index>(c.num_objects()); ++b)
    for (Index f : c.hom(b, a)) {
      Index x = p.re(f, alpha);
      if (x == kNone) continue;
      SplitReport s = is_splitting(p, b, x);
      if (!s.verdict) {
        if (witness) *witness = {{"arrow", c.morphism_name(f)}, {"reindexed", element_name(p, b, x)}, {"hypothesis", s.witness}};
        return false;
      }
    }
  return true;
}

Report has_rc(const Doctrine& p) {
  Report rep("rule-of-choice");
  const FinCat& c = p.cat();
  bool stated = true, tops = true;
  Json failing = Json::array();
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a) {
    Index top = p.top(a);
    for (Index b = 0; b < static_cast<Index>(c.num_objects()); ++b) {
      const Product* pr = c.product(a, b);
      if (!pr) continue;
      for (Index beta = 0; beta < static_cast<Index>(p.size(pr->object)); ++beta) {
        Index e = p.ex(pr->first, beta);
        if (e == kNone) {
          ++rep.skipped;
          continue;
        }
        ++rep.checked;
        if (!p.leq(a, top, e)) continue;
        if (find_section(p, a, b, beta, [&](Index v) { return p.leq(a, top, v); }) == kNone) {
          failing.push_back({{"A", c.object_name(a)}, {"B", c.object_name(b)}, {"beta", element_name(p, pr->object, beta)}});
          stated = false;
        }
      }
    }
    ++rep.checked;
    if (!is_splitting(p, a, top).verdict) tops = false;
  }
  if (!stated) rep.fail("rule-of-choice", failing[0]);
  if (stated != tops) rep.fail("forms-agree", {{"stated", stated}, {"tops_splitting", tops}});
  rep.details = {{"verdict", stated}, {"tops_splitting", tops}, {"counterexamples", failing}};
  return rep;
}

Report check_cover(const Doctrine& p, const Subdoctrine& sub, std::vector<std::vector<CoverAssignment>>* assignment) {
  Report rep("cover");
  const FinCat& c = p.cat();
  const auto n = static_cast<Index>(c.num_objects());
  bool splitting = true, relative = true, covered = true;
  for (Index a = 0; a < n; ++a)
    for (Index x : sub.elements[a]) {
      ++rep.checked;
      SplitReport s = is_splitting(p, a, x);
      if (!s.verdict) {
        if (splitting) rep.fail("splitting", {{"element", element_name(p, a, x)}, {"hypothesis", s.witness}});
        splitting = false;
      }
      if (!is_splitting(p, a, x, &sub).verdict) relative = false;
    }
  if (assignment) assignment->assign(n, {});
  for (Index a = 0; a < n; ++a)
    for (Index alpha = 0; alpha < static_cast<Index>(p.size(a)); ++alpha) {
      ++rep.checked;
      CoverAssignment found;
      for (Index b = 0; b < n && found.aux == kNone; ++b) {
        const Product* pr = c.product(a, b);
        if (!pr) continue;
        for (Index beta : sub.elements[pr->object])
          if (p.ex(pr->first, beta) == alpha) {
            found = {b, beta};
            break;
          }
      }
      if (assignment) (*assignment)[a].push_back(found);
      if (found.aux == kNone) {
        if (covered) rep.fail("covered", {{"element", element_name(p, a, alpha)}});
        covered = false;
      }
    }
  bool absolute = splitting && covered;
  bool rel = relative && covered;
  if (absolute != rel) rep.fail("relative-agrees", {{"cover", absolute}, {"relative_cover", rel}});
  rep.details = {{"cover", absolute}, {"relative_cover", rel}, {"all_splitting", splitting}, {"all_covered", covered}};
  return rep;
}

CoverResult find_cover(const Doctrine& p) {
  CoverResult out;
  Report& rep = out.report;
  rep.check = "find-cover";
  const FinCat& c = p.cat();
  const auto n = static_cast<Index>(c.num_objects());
  Subdoctrine splitting, free;
  splitting.elements.resize(n);
  free.elements.resize(n);
  std::size_t total = 0;
  for (Index a = 0; a < n; ++a)
    for (Index x = 0; x < static_cast<Index>(p.size(a)); ++x) {
      ++total;
      SplitReport s = is_splitting(p, a, x);
      ++rep.checked;
      if (s.verdict != s.prop_verdict)
        rep.fail("def-vs-prop", {{"element", element_name(p, a, x)}, {"def", s.verdict}, {"prop", s.prop_verdict}});
      if (s.verdict) splitting.elements[a].push_back(x);
      if (is_free(p, a, x)) free.elements[a].push_back(x);
    }
  // Closure of the free elements under tops and meets.
  bool meets_closed = true, tops_free = true;
  Json meet_witness;
  for (Index a = 0; a < n; ++a) {
    if (!free.contains(a, p.top(a))) {
      if (tops_free) rep.fail("top-free", {{"element", element_name(p, a, p.top(a))}});
      tops_free = false;
    }
    for (Index x : free.elements[a])
      for (Index y : free.elements[a]) {
        Index m = p.meet(a, x, y);
        if (m == kNone) continue;
        if (!free.contains(a, m)) {
          if (meets_closed)
            meet_witness = {{"left", element_name(p, a, x)}, {"right", element_name(p, a, y)}};
          meets_closed = false;
        }
      }
  }
  std::vector<std::vector<CoverAssignment>> assignment;
  Report cover = check_cover(p, free, &assignment);
  bool enough_free = cover.details["all_covered"].get<bool>();
  bool exists = cover.details["cover"].get<bool>() && meets_closed && tops_free;
  Report rc = has_rc(p);
  bool characterization = rc.details["verdict"].get<bool>() && meets_closed && enough_free;
  for (const auto& f : cover.failures)
    if (f["law"] == "covered") rep.fail("covered", f["witness"]);
  if (!meets_closed) rep.fail("meets-closed", meet_witness);
  if (cover.failed("relative-agrees")) rep.fail("relative-agrees", cover.details);
  if (characterization != exists)
    rep.fail("characterization-agrees", {{"cover", exists}, {"rc_meets_enough_free", characterization}});
  bool same = true;
  for (Index a = 0; a < n; ++a) same = same && splitting.elements[a] == free.elements[a];
  if (enough_free && !same) rep.fail("splitting-is-free", Json::object());
  std::size_t nsplit = 0, nfree = 0;
  for (Index a = 0; a < n; ++a) {
    nsplit += splitting.elements[a].size();
    nfree += free.elements[a].size();
  }
  rep.details = {{"cover", exists},          {"whole", exists && nfree == total}, {"elements", total},
                 {"splitting", nsplit},      {"free", nfree},                     {"rc", rc.details["verdict"]},
                 {"meets_closed", meets_closed}, {"enough_free", enough_free},
                 {"relative_cover", cover.details["relative_cover"]}};
  if (exists) out.cover = free;
  return out;
}

Report epsilon_operators(const Doctrine& p) {
  Report rep("epsilon");
  const FinCat& c = p.cat();
  bool all = true;
  std::size_t found = 0;
  for (const auto& [key, pr] : c.products()) {
    Index a = static_cast<Index>(key >> 32), b = static_cast<Index>(key & 0xffffffffu);
    for (Index alpha = 0; alpha < static_cast<Index>(p.size(pr.object)); ++alpha) {
      Index e = p.ex(pr.first, alpha);
      if (e == kNone) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (find_section(p, a, b, alpha, [&](Index v) { return v == e; }) == kNone) {
        if (all)
          rep.fail("epsilon", {{"A", c.object_name(a)}, {"B", c.object_name(b)}, {"alpha", element_name(p, pr.object, alpha)}});
        all = false;
      } else {
        ++found;
      }
    }
  }
  CoverResult cover = find_cover(p);
  bool whole = cover.report.details["whole"].get<bool>();
  if (whole != all) rep.fail("theorem-agrees", {{"has_epsilon", all}, {"whole_cover", whole}});
  rep.details = {{"has_epsilon", all}, {"found", found}, {"whole_cover", whole}};
  return rep;
}

Report localic_epsilon(const LocalicDoctrine& h, std::size_t bound) {
  Report rep("localic-epsilon");
  const GenCat& g = h.base();
  const auto words = g.enumerate_objects(bound);
  const std::size_t levels = h.levels().size();
  constexpr std::size_t kValuationBudget = std::size_t{1} << 16;
  for (const auto& a : words)
    for (const auto& b : words) {
      if (a.size() + b.size() > bound) continue;
      GenCat::Word ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      std::size_t na = g.cardinality(a), nb = g.cardinality(b), nab = g.cardinality(ab);
      std::size_t count = 1;
      for (std::size_t i = 0; i < nab && count <= kValuationBudget; ++i) count *= levels;
      if (count > kValuationBudget) {
        ++rep.skipped;
        continue;
      }
      for (std::size_t idx = 0; idx < count; ++idx) {
        auto alpha = h.decode(nab, idx);
        auto eps = h.epsilon(a, b, alpha);
        std::vector<int> pairing(na);
        for (std::size_t i = 0; i < na; ++i) pairing[i] = static_cast<int>(i * nb) + eps[i];
        ++rep.checked;
        if (h.reindex(pairing, alpha) != h.exists_first(a, b, alpha))
          rep.fail("epsilon", {{"A", g.word_name(a)}, {"B", g.word_name(b)}, {"alpha", alpha}});
      }
    }
  return rep;
}

Report check_projectives(const RelationalCategory& reg, const GraphFunctor& g, const Doctrine& p) {
  Report rep("projectives");
  const FinCat& rc = *reg.cat;
  const FinCat& base = p.cat();
  const Relations& rel = *reg.rel;
  std::vector<Index> images = g.functor.object_map;
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  for (Index x : images) {
    ++rep.checked;
    Json w;
    if (!is_regular_projective(reg, x, &w)) rep.fail("projective", w);
  }
  for (Index y = 0; y < static_cast<Index>(rc.num_objects()); ++y) {
    ++rep.checked;
    bool covered = false;
    for (Index x : images) {
      for (Index e : rc.hom(x, y))
        if (is_regular_epi(reg, e)) {
          covered = true;
          break;
        }
      if (covered) break;
    }
    if (!covered) rep.fail("covered", {{"object", rc.object_name(y)}});
    const PredObject& o = reg.objects[y];
    Index top = reg.find_object(o.carrier, p.top(o.carrier));
    Index m = top == kNone ? kNone : reg.arrow(y, top, rel.identity(o.carrier, o.pred));
    ++rep.checked;
    if (m == kNone || !is_monic(rc, m)) rep.fail("embeds", {{"object", rc.object_name(y)}});
  }
  // Trackability of arrows out of splitting objects.
  std::size_t tracked = 0;
  for (Index f = 0; f < static_cast<Index>(rc.num_morphisms()); ++f) {
    const PredObject& ox = reg.objects[rc.dom(f)];
    const PredObject& oy = reg.objects[rc.cod(f)];
    if (!is_splitting(p, ox.carrier, ox.pred).verdict) continue;
    ++rep.checked;
    std::vector<Index> tracks;
    for (Index h : base.hom(ox.carrier, oy.carrier))
      if (p.re(base.pair(base.identity(ox.carrier), h), reg.relation[f]) == ox.pred) tracks.push_back(h);
    if (tracks.empty()) {
      rep.fail("trackable", {{"arrow", rc.morphism_name(f)}});
      continue;
    }
    ++tracked;
    for (Index h : tracks)
      for (Index k : tracks) {
        Index eq = p.re(base.pair(h, k), p.delta[oy.carrier]);
        if (eq != kNone && !p.leq(ox.carrier, ox.pred, eq))
          rep.fail("tracks-agree", {{"arrow", rc.morphism_name(f)}, {"h", base.morphism_name(h)}, {"k", base.morphism_name(k)}});
      }
  }
  rep.details = {{"images", images.size()}, {"tracked", tracked}};
  return rep;
}

Report verify_main_theorem(const DoctrinePtr& pp, const Subdoctrine& sub, const MainTheoremOptions& opts) {
  Report rep("main-theorem");
  const Doctrine& p = *pp;
  // Cover status of P′, and agreement with the computed cover.
  Report cover = check_cover(p, sub);
  bool is_cover = cover.details["cover"].get<bool>();
  CoverResult found = find_cover(p);
  bool found_matches = found.cover.has_value() && found.cover->elements == sub.elements;
  if (is_cover != found_matches) rep.fail("cover-unique", {{"cover", is_cover}, {"found_cover_equals_sub", found_matches}});
  if (cover.failed("relative-agrees")) rep.fail("relative-agrees", cover.details);

  auto restriction = std::make_shared<Restriction>(restrict(p, sub));
  auto sub_doctrine = std::make_shared<Doctrine>(restriction->doctrine);
  PredCategory pred_sub = pred_category(sub_doctrine);
  PredCategory pred = pred_category(pp);
  auto psi = std::make_shared<Doctrine>(weak_subobjects(pred_sub.cat));
  PsiToPcx iota_m = psi_to_pcx(psi, pred_sub, pred, *restriction);
  rep.merge(iota_m.report);

  RelationalCategory reg = reg_completion(pp, opts.rel);
  RelationalCategory ex = ex_completion(pp, opts.rel);
  RelationalCategory reglex = reg_completion(psi);
  RelationalCategory exlex = ex_completion(psi);
  for (const auto* r : {&reg, &ex, &reglex, &exlex})
    if (!r->laws.pass) rep.merge(r->laws);

  GraphFunctor g = graph_functor(reg, pred_sub, *restriction);
  rep.merge(g.report);

  std::vector<Index> carrier_map;
  for (const auto& o : pred_sub.objects) carrier_map.push_back(o.carrier);
  const DoctrineMorphism& im = iota_m.morphism;
  auto iota = [&](Index x, Index sigma) -> Index {
    Index v = im.element_map[x][sigma];
    return v == kNone ? kNone : pred.fiber_elements[im.object_map[x]][v];
  };
  Functor greg = induced_functor(reglex, reg, carrier_map, iota);
  Functor gex = induced_functor(exlex, ex, carrier_map, iota);
  Report freg = check_functor(greg), fex = check_functor(gex);
  if (!freg.pass) rep.merge(freg);
  if (!fex.pass) rep.merge(fex);

  // G^reg restricts to G along Pred(P′) → reg/lex.
  const FinCat& pc = *pred_sub.cat;
  for (Index m = 0; m < static_cast<Index>(pc.num_morphisms()); ++m) {
    Index x = reglex.find_object(pc.dom(m), psi->top(pc.dom(m)));
    Index y = reglex.find_object(pc.cod(m), psi->top(pc.cod(m)));
    Index arrow = reglex.arrow(x, y, reglex.rel->graph(m, psi->top(pc.dom(m))));
    ++rep.checked;
    if (arrow == kNone || greg.morphism_map[arrow] != g.functor.morphism_map[m])
      rep.fail("factorization", {{"arrow", pc.morphism_name(m)}});
  }

  Report ereg = check_equivalence(greg);
  Report eex = check_equivalence(gex);
  auto equivalence = [](const Report& r) {
    return r.details["faithful"].get<bool>() && r.details["full"].get<bool>() &&
           r.details["essentially_surjective"].get<bool>();
  };
  bool reg_equiv = equivalence(ereg), ex_equiv = equivalence(eex);
  if (reg_equiv != is_cover || ex_equiv != is_cover)
    rep.fail("biconditional", {{"cover", is_cover}, {"reg_equivalence", reg_equiv}, {"ex_equivalence", ex_equiv}});
  rep.details = {{"cover", is_cover},
                 {"cover_report", cover.to_json()},
                 {"rc", found.report.details["rc"]},
                 {"reg_equivalence", reg_equiv},
                 {"ex_equivalence", ex_equiv},
                 {"reg", ereg.to_json()},
                 {"ex", eex.to_json()},
                 {"sizes",
                  {{"pred_sub", pc.num_objects()},
                   {"reg", reg.cat->num_objects()},
                   {"reg_lex", reglex.cat->num_objects()},
                   {"ex", ex.cat->num_objects()},
                   {"ex_lex", exlex.cat->num_objects()}}}};
  return rep;
}

}  // namespace doctrina
