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

#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "doctrina/completions.hpp"

namespace doctrina {

/// A functor between finite categories.
struct Functor {
  CatPtr source;
  CatPtr target;
  std::vector<Index> object_map;
  std::vector<Index> morphism_map;
};
Functor identity_functor(const CatPtr& cat);
/// Typing, identities and composition.
Report check_functor(const Functor& f);

/// Relational calculus over a tabulated elementary existential doctrine.
/// Composition quantifies along the first projection of (A×C)×B.
class Relations {
 public:
  explicit Relations(DoctrinePtr p);
  const Doctrine& doctrine() const { return *p_; }
  const FinCat& cat() const { return p_->cat(); }
  Index product(Index a, Index b) const;
  /// φ° ∈ P(B×A) for φ ∈ P(A×B).
  Index converse(Index a, Index b, Index phi) const;
  /// φ;ψ ∈ P(A×C) for φ ∈ P(A×B), ψ ∈ P(B×C).
  Index compose(Index a, Index b, Index c, Index phi, Index psi) const;
  /// δ_A ∧ P_π1(α) ∧ P_π2(α).
  Index identity(Index a, Index alpha) const;
  /// P_{f×id}(δ_B) ∧ P_π1(α) for f: A→B.
  Index graph(Index f, Index alpha) const;
  /// ∃_{π1} and ∃_{π2} of φ ∈ P(A×B).
  Index domain(Index a, Index b, Index phi) const;
  Index codomain(Index a, Index b, Index phi) const;
  /// P_{π1}(α) ∧ P_{π2}(β) on A×B.
  Index box(Index a, Index b, Index alpha, Index beta) const;
  bool leq(Index a, Index x, Index y) const { return x != kNone && y != kNone && p_->leq(a, x, y); }

 private:
  struct Triple {
    Index object = kNone, first = kNone, second = kNone, left = kNone, right = kNone;
  };
  const Triple& triple(Index a, Index b, Index c) const;
  DoctrinePtr p_;
  mutable std::map<std::tuple<Index, Index, Index>, Triple> triples_;
};

struct RelOptions {
  /// Largest fiber P(A×B) scanned per hom set.
  std::size_t budget = std::size_t{1} << 20;
  /// Base objects allowed as carriers; empty means all.
  std::vector<Index> carriers;
  /// Ex only: keep reflexive relations (equivalence relations).
  bool reflexive_only = false;
};

/// Reg(P) or Ex(P): objects pair a carrier with an element, arrows are
/// relations. `laws` holds the category laws and internal consistency.
struct RelationalCategory {
  std::shared_ptr<FinCat> cat;
  DoctrinePtr doctrine;
  std::shared_ptr<Relations> rel;
  bool exact = false;
  std::vector<PredObject> objects;
  std::vector<Index> relation;  // arrow -> element of P(carrier(dom) × carrier(cod))
  std::map<std::tuple<Index, Index, Index>, Index> lookup;
  Report laws;

  Index find_object(Index carrier, Index pred) const;
  Index arrow(Index x, Index y, Index phi) const;
};

/// Entire functional relations over P_cx. Throws FiberTooLarge past the
/// budget and MissingStructure without δ and ∃.
RelationalCategory reg_completion(const DoctrinePtr& p, const RelOptions& opts = {});
/// Partial equivalence relations and strict functional relations.
RelationalCategory ex_completion(const DoctrinePtr& p, const RelOptions& opts = {});

/// Pullbacks and coequalizers by exhaustive search; the first universal
/// candidate in (object, arrow) order.
std::optional<PullbackCone> find_pullback(const FinCat& cat, Index f, Index g);
bool is_coequalizer(const FinCat& cat, Index e, Index a, Index b);
/// Coequalizer of the kernel pair; nullopt when the kernel pair is missing.
std::optional<bool> is_regular_epi_categorical(const FinCat& cat, Index f);
/// β = ∃_{π2}(φ) for φ: (A,α)→(B,β).
bool is_regular_epi(const RelationalCategory& r, Index f);
/// Compares both tests on every arrow.
Report check_regular_epis(const RelationalCategory& r);

struct ImageFactorization {
  Index epi = kNone;
  Index mono = kNone;
};
ImageFactorization image_factorization(const RelationalCategory& r, Index f);
/// Relational monicity φ;φ° ≤ δ.
bool is_relational_mono(const RelationalCategory& r, Index f);
/// Factorizations exist, compose back, have a regular epi and a mono part,
/// and epi parts are stable under pullback along every arrow.
Report check_images(const RelationalCategory& r);

/// Exhaustive lifting against every regular epi. The witness names a
/// failing (epi, arrow) pair.
bool is_regular_projective(const RelationalCategory& r, Index x, Json* witness = nullptr);

/// G: Pred(P′) → Reg(P) for a subdoctrine P′ of P given by its restriction.
struct GraphFunctor {
  Functor functor;
  Report report;
};
GraphFunctor graph_functor(const RelationalCategory& reg, const PredCategory& pred, const Restriction& sub);

/// (I,ι): Ψ_{Pred(P′)} → P_cx with ι([f]) = ∃_f(β).
struct PsiToPcx {
  DoctrineMorphism morphism;
  Report report;
};
PsiToPcx psi_to_pcx(const DoctrinePtr& psi, const PredCategory& pred_sub, const PredCategory& pred,
                    const Restriction& sub);

/// Class representatives of Ψ or Sub fibers: element -> arrow into the object.
std::vector<std::vector<Index>> slice_representatives(const Doctrine& d);

/// ex/reg via equivalence relations in Sub_R. Throws NotRegular when Sub_R
/// lacks images.
RelationalCategory ex_reg_crosscheck(const CatPtr& regular, const RelOptions& opts = {});
RelationalCategory reg_lex(const CatPtr& c, const RelOptions& opts = {});
RelationalCategory ex_lex(const CatPtr& c, const RelOptions& opts = {});

/// Faithful, full, essentially surjective (exhaustive iso search).
Report check_equivalence(const Functor& f);

/// The functor Reg(Ψ_{Pred P′}) → Reg(P) (or Ex) induced by ι on carriers and
/// relations. `carrier_map` sends Pred(P′) objects to base objects of P.
Functor induced_functor(const RelationalCategory& from, const RelationalCategory& to,
                        const std::vector<Index>& carrier_map,
                        const std::function<Index(Index, Index)>& iota);

/// Ex(P) → ex/reg(Reg(P)): (A,ρ) goes to the support (A,∃π1ρ) with ρ as a
/// subobject of its square, and φ to the subobject (A×B,φ) of the product.
/// `ex_reg` must be ex_reg_crosscheck(reg.cat).
Functor ex_comparison(const RelationalCategory& ex, const RelationalCategory& reg, const RelationalCategory& ex_reg);

}  // namespace doctrina
