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
#include <tuple>
#include <vector>

#include "doctrina/doctrine.hpp"

namespace doctrina {

/// P^∃ together with the inclusion P → P^∃.
struct ExistentialCompletion {
  DoctrinePtr doctrine;
  DoctrineMorphism inclusion;
  /// Per object, the representative (aux object, payload ∈ P(A×aux)) of each class.
  std::vector<std::vector<std::pair<Index, Index>>> representatives;
};

/// Classes of triples (A, B, α ∈ P(A×B)) for every aux B whose product with
/// A is available. Throws NotTabulated on an empty doctrine.
ExistentialCompletion existential_completion(const DoctrinePtr& p);

/// The inclusion image as a subdoctrine of P^∃.
Subdoctrine inclusion_image(const ExistentialCompletion& e);

struct PredObject {
  Index carrier = kNone;
  Index pred = kNone;
};

/// 𝒢_P with P_c. Arrows keep the base arrow in `arrow_base`.
struct ComprehensionCompletion {
  CatPtr cat;
  DoctrinePtr doctrine;
  std::vector<PredObject> objects;
  std::vector<Index> arrow_base;
  /// fiber_elements[X][i] = element of P(carrier) for element i of P_c(X).
  std::vector<std::vector<Index>> fiber_elements;
  std::shared_ptr<const std::map<std::tuple<Index, Index, Index>, Index>> lookup;
};
ComprehensionCompletion comprehension_completion(const DoctrinePtr& p);

/// 𝒳_P with P_x; f ∼ g iff ⊤ ≤ P_⟨f,g⟩(δ). Throws IllDefinedQuotient
/// when related arrows reindex differently or composition is not stable.
struct ExtensionalReflection {
  CatPtr cat;
  DoctrinePtr doctrine;
  std::vector<Index> class_of;        // source arrow -> quotient arrow
  std::vector<Index> representative;  // quotient arrow -> source arrow
};
ExtensionalReflection extensional_reflection(const DoctrinePtr& p);

/// Pred(P) with P_cx. `arrow_base` is the base arrow of each class
/// representative.
struct PredCategory {
  CatPtr cat;
  DoctrinePtr doctrine;
  std::vector<PredObject> objects;
  std::vector<Index> arrow_base;
  std::vector<std::vector<Index>> fiber_elements;
  DoctrinePtr source;
  /// (X, Y, base arrow) -> Pred arrow containing it.
  std::shared_ptr<const std::map<std::tuple<Index, Index, Index>, Index>> lookup;

  Index find(Index carrier, Index pred) const;
  Index arrow(Index x, Index y, Index base_arrow) const;
};
PredCategory pred_category(const DoctrinePtr& p);

/// Pullback of f: X→Z, g: Y→Z in Pred(P): carrier A×B with predicate
/// P_π1α ∧ P_π2β ∧ P_⟨fπ1,gπ2⟩(δ_C). Returns kNone entries when a product
/// or meet escaped a bound.
struct PullbackCone {
  Index object = kNone;
  Index first = kNone;
  Index second = kNone;
};
PullbackCone pred_pullback(const PredCategory& pc, Index f, Index g);

enum class Strength { kNone, kWeak, kStrong };
const char* strength_name(Strength s);

struct ComprehensionResult {
  Index arrow = kNone;
  Strength strength = Strength::kNone;
};
/// Exhaustive search for ⦃α⦄ over arrows into A, smallest domain first.
ComprehensionResult comprehension(const Doctrine& p, Index a, Index alpha);

/// Full comprehensions and comprehensive diagonals.
Report check_m_variational(const Doctrine& p);

/// Lex structure and the m-variational properties of P_cx: constructed
/// pullbacks satisfy their UMP, comprehensions are monic and stable under
/// pullback, monos are exactly the arrows with P_{f×f}(δ) = δ, functional
/// elements are exactly those whose comprehension projects monically, and
/// ∃_f satisfies BCC on constructed pullbacks.
Report check_pred(const PredCategory& pc);

/// Monicity by left cancellation.
bool is_monic(const FinCat& cat, Index f);

}  // namespace doctrina
