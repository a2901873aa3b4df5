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


// Brute-force reference implementations used by the tests. They read the
// tables directly and share no code with the library algorithms.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctrina/doctrine.hpp"
#include "doctrina/reglog.hpp"

namespace oracle {

using doctrina::Doctrine;
using doctrina::FinCat;
using doctrina::Index;
using doctrina::kNone;

inline std::string fixture(const std::string& name) { return std::string(DOCTRINA_FIXTURES) + "/" + name; }

// Splitting in the equality form (eq = true) or the ≤ form, over the chosen
// first projections A×B → A.
inline bool splits(const Doctrine& p, Index a, Index alpha, bool eq = true) {
  const FinCat& c = p.cat();
  for (Index b = 0; b < static_cast<Index>(c.num_objects()); ++b) {
    const doctrina::Product* ab = c.product(a, b);
    if (ab == nullptr) continue;
    auto ex = p.exists.find(ab->first);
    if (ex == p.exists.end()) continue;
    for (Index beta = 0; beta < static_cast<Index>(p.size(ab->object)); ++beta) {
      Index e = ex->second[beta];
      if (e == kNone) continue;
      if (eq ? e != alpha : !p.leq(a, alpha, e)) continue;
      bool found = false;
      for (Index h : c.hom(a, b)) {
        Index s = c.pair(c.identity(a), h);
        Index v = s == kNone ? kNone : p.re(s, beta);
        if (v == kNone) continue;
        if (eq ? v == alpha : p.leq(a, alpha, v)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

inline bool is_free(const Doctrine& p, Index a, Index alpha) {
  const FinCat& c = p.cat();
  for (Index b = 0; b < static_cast<Index>(c.num_objects()); ++b)
    for (Index f : c.hom(b, a)) {
      Index v = p.re(f, alpha);
      if (v != kNone && !splits(p, b, v)) return false;
    }
  return true;
}

// Element index by name, kNone when absent.
inline Index element(const Doctrine& p, const std::string& object, const std::string& name) {
  Index a = p.cat().find_object(object);
  if (a == kNone) return kNone;
  const auto& names = p.fiber(a).names;
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? kNone : static_cast<Index>(it - names.begin());
}

// Bounded proof search for φ ⊢ ψ in the empty theory. The ∃-variables of φ
// become eigenconstants; each ∃-variable of ψ is instantiated by every term
// of its sort; conjuncts are derived from φ's atoms modulo the equality
// closure of φ's equations.
class ProofSearch {
 public:
  ProofSearch(const doctrina::Signature& sig, const doctrina::Context& ctx) : sig_(sig) {
    for (const auto& [name, sort] : ctx) add_term(name, sort);
    for (const auto& k : sig.constants) add_term(k.name, k.sort);
  }

  bool prove(const doctrina::Formula& phi, const doctrina::Formula& psi,
             std::map<std::string, std::string>* witness = nullptr) {
    assume(phi, {});
    std::vector<std::pair<std::string, int>> meta;
    std::vector<const doctrina::Formula*> goals;
    goal(psi, meta, goals);
    std::map<std::string, std::string> inst;
    std::function<bool(std::size_t)> search = [&](std::size_t i) {
      if (i == meta.size()) {
        for (const auto* g : goals)
          if (!derivable(*g, inst)) return false;
        return true;
      }
      for (const auto& [term, sort] : terms_) {
        if (sort != meta[i].second) continue;
        inst[meta[i].first] = term;
        if (search(i + 1)) return true;
      }
      return false;
    };
    bool ok = search(0);
    if (ok && witness != nullptr) *witness = inst;
    return ok;
  }

  // Checks ψ's matrix under a given instantiation of its ∃-variables, after
  // φ has been assumed by prove().
  bool check(const doctrina::Formula& psi, const std::map<std::string, std::string>& inst) {
    std::vector<std::pair<std::string, int>> meta;
    std::vector<const doctrina::Formula*> goals;
    goal(psi, meta, goals);
    for (const auto& [name, sort] : meta)
      if (!inst.count(name)) return false;
    for (const auto* g : goals)
      if (!derivable(*g, inst)) return false;
    return true;
  }

 private:
  void add_term(const std::string& name, int sort) {
    if (!parent_.count(name)) {
      parent_[name] = name;
      terms_.emplace_back(name, sort);
    }
  }

  std::string find(const std::string& x) {
    std::string r = x;
    while (parent_.at(r) != r) r = parent_.at(r);
    return r;
  }

  std::string name(const doctrina::Term& t, const std::map<std::string, std::string>& env) const {
    auto it = env.find(t.name);
    return it == env.end() ? t.name : it->second;
  }

  void assume(const doctrina::Formula& f, std::map<std::string, std::string> env) {
    using K = doctrina::Formula::Kind;
    switch (f.kind) {
      case K::kTop:
        break;
      case K::kAnd:
        for (const auto& c : f.children) assume(c, env);
        break;
      case K::kEq: {
        std::string x = find(name(f.terms[0], env)), y = find(name(f.terms[1], env));
        if (x != y) parent_[x] = y;
        break;
      }
      case K::kAtom: {
        std::vector<std::string> args;
        for (const auto& t : f.terms) args.push_back(name(t, env));
        facts_.emplace_back(f.relation, args);
        break;
      }
      case K::kExists: {
        std::string fresh = f.var;
        while (parent_.count(fresh)) fresh += "'";
        add_term(fresh, f.sort);
        env[f.var] = fresh;
        assume(f.children[0], env);
        break;
      }
    }
  }

  void goal(const doctrina::Formula& f, std::vector<std::pair<std::string, int>>& meta,
            std::vector<const doctrina::Formula*>& goals) {
    using K = doctrina::Formula::Kind;
    if (f.kind == K::kAnd) {
      for (const auto& c : f.children) goal(c, meta, goals);
    } else if (f.kind == K::kExists) {
      meta.emplace_back(f.var, f.sort);
      goal(f.children[0], meta, goals);
    } else if (f.kind != K::kTop) {
      goals.push_back(&f);
    }
  }

  bool derivable(const doctrina::Formula& g, const std::map<std::string, std::string>& inst) {
    if (g.kind == doctrina::Formula::Kind::kEq)
      return find(name(g.terms[0], inst)) == find(name(g.terms[1], inst));
    for (const auto& [rel, args] : facts_) {
      if (rel != g.relation) continue;
      bool all = true;
      for (std::size_t i = 0; i < args.size() && all; ++i) all = find(args[i]) == find(name(g.terms[i], inst));
      if (all) return true;
    }
    return false;
  }

  const doctrina::Signature& sig_;
  std::map<std::string, std::string> parent_;
  std::vector<std::pair<std::string, int>> terms_;
  std::vector<std::pair<int, std::vector<std::string>>> facts_;
};

// Random sequents over `sig` with at most `max_atoms` atoms per side and at
// most `max_vars` variables (context plus bound) per side.
class SequentGenerator {
 public:
  SequentGenerator(const doctrina::Signature& sig, unsigned seed) : sig_(sig), rng_(seed) {}

  std::string next(int max_atoms = 4, int max_vars = 3) {
    const int nctx = pick(1, 2);
    std::vector<std::pair<std::string, int>> ctx;
    std::string text;
    for (int i = 0; i < nctx; ++i) {
      ctx.emplace_back("x" + std::to_string(i + 1), pick(0, static_cast<int>(sig_.sorts.size()) - 1));
      text += (i ? ", " : "") + ctx.back().first + ":" + sig_.sorts[ctx.back().second];
    }
    text += " | " + side(ctx, "u", max_atoms, max_vars - nctx) + " |- " + side(ctx, "y", max_atoms, max_vars - nctx);
    return text;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::string side(const std::vector<std::pair<std::string, int>>& ctx, const std::string& prefix, int max_atoms,
                   int max_bound) {
    auto vars = ctx;
    std::string head;
    const int nbound = pick(0, std::max(0, max_bound));
    for (int i = 0; i < nbound; ++i) {
      const int sort = pick(0, static_cast<int>(sig_.sorts.size()) - 1);
      vars.emplace_back(prefix + std::to_string(i + 1), sort);
      head += "exists " + vars.back().first + ":" + sig_.sorts[sort] + ". ";
    }
    auto term = [&](int sort) {
      std::vector<std::string> pool;
      for (const auto& [n, s] : vars)
        if (s == sort) pool.push_back(n);
      for (const auto& k : sig_.constants)
        if (k.sort == sort) pool.push_back(k.name);
      return pool.empty() ? std::string() : pool[pick(0, static_cast<int>(pool.size()) - 1)];
    };
    std::vector<std::string> parts;
    const int natoms = pick(0, max_atoms);
    for (int i = 0; i < natoms; ++i) {
      if (pick(0, 4) == 0) {
        const int sort = pick(0, static_cast<int>(sig_.sorts.size()) - 1);
        std::string l = term(sort), r = term(sort);
        if (!l.empty() && !r.empty()) parts.push_back(l + " = " + r);
        continue;
      }
      const auto& rel = sig_.relations[pick(0, static_cast<int>(sig_.relations.size()) - 1)];
      std::string atom = rel.name + "(";
      bool ok = true;
      for (std::size_t j = 0; j < rel.arity.size(); ++j) {
        std::string t = term(rel.arity[j]);
        ok = ok && !t.empty();
        atom += (j ? "," : "") + t;
      }
      if (ok) parts.push_back(atom + ")");
    }
    std::string body;
    for (const auto& s : parts) body += (body.empty() ? "" : " & ") + s;
    if (body.empty()) body = "T";
    return head + body;
  }

  const doctrina::Signature& sig_;
  std::mt19937 rng_;
};

}  // namespace oracle
