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

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "doctrina/core.hpp"

namespace doctrina {

/// A tabulated doctrine over a finite base. Fibers are indexed by object;
/// `reindex[f]` sends P(cod f) to P(dom f). Any table cell may be kNone when
/// the value escaped a materialization bound; validators skip such cells.
struct Doctrine {
  std::string name;
  CatPtr base;
  std::vector<MeetSL> fibers;
  std::vector<std::vector<Index>> reindex;
  /// δ_A ∈ P(A×A) per object; empty when the doctrine is not elementary.
  std::vector<Index> delta;
  /// ∃ along product projections, keyed by projection arrow.
  std::unordered_map<Index, std::vector<Index>> exists;
  bool existential = false;

  const FinCat& cat() const { return *base; }
  const MeetSL& fiber(Index a) const { return fibers.at(a); }
  std::size_t size(Index a) const { return fibers.at(a).size(); }
  bool elementary() const { return !delta.empty(); }
  Index top(Index a) const { return fibers[a].top; }
  bool leq(Index a, Index x, Index y) const { return fibers[a].leq(x, y); }
  Index meet(Index a, Index x, Index y) const;
  /// P_f(x), or kNone.
  Index re(Index f, Index x) const;
  /// ∃_π(x) for a projection π, or kNone.
  Index ex(Index proj, Index x) const;
};

using DoctrinePtr = std::shared_ptr<const Doctrine>;

/// Every first and second projection of a chosen product, ascending.
std::vector<Index> projections(const FinCat& cat);

enum class Level { kPrimary, kElementary, kExistential };
Level parse_level(const std::string& text);

/// Exhaustive structure check. Throws MissingStructure when `level`
/// demands tables that are absent.
Report validate_doctrine(const Doctrine& p, Level level);

/// ∃_f(α) = ∃_{π2}(P_{f×id}(δ_B) ∧ P_{π1}(α)) for f: A→B; kNone when a
/// needed cell escaped a bound.
Index exists_along(const Doctrine& p, Index f, Index alpha);
/// Checks α ≤ P_f(β) ⇔ ∃_f(α) ≤ β for every arrow f and all α, β.
Report check_exists_along(const Doctrine& p);

/// Selected elements per object, ascending parent indices.
struct Subdoctrine {
  std::vector<std::vector<Index>> elements;

  bool contains(Index a, Index x) const;
  static Subdoctrine whole(const Doctrine& p);
  static Subdoctrine tops(const Doctrine& p);
};

/// Top, binary meets (where defined) and reindexing closure.
Report validate_subdoctrine(const Doctrine& p, const Subdoctrine& s);

/// The selected elements as a doctrine in their own right. δ is kept when
/// every δ_A is selected; ∃ is dropped.
struct Restriction {
  Doctrine doctrine;
  std::vector<std::vector<Index>> embed;    // sub index -> parent index
  std::vector<std::vector<Index>> project;  // parent index -> sub index or kNone
};
Restriction restrict(const Doctrine& p, const Subdoctrine& s);

/// A 1-cell (F,b) between tabulated doctrines.
struct DoctrineMorphism {
  DoctrinePtr source;
  DoctrinePtr target;
  std::vector<Index> object_map;
  std::vector<Index> morphism_map;
  std::vector<std::vector<Index>> element_map;
  bool preserves_delta = false;
  bool preserves_exists = false;
};

DoctrineMorphism identity_morphism(const DoctrinePtr& p);
/// The inclusion of a subdoctrine's restriction into its parent.
DoctrineMorphism inclusion_morphism(const DoctrinePtr& sub, const DoctrinePtr& parent,
                                    const std::vector<std::vector<Index>>& embed);

/// Functor laws, strict product preservation, naturality, top/meet
/// preservation, and δ/∃ preservation when flagged. The actual δ/∃
/// preservation status is reported in details either way.
Report validate_morphism(const DoctrineMorphism& m);

/// Ψ_C: poset reflection of slices, reindexing by weak pullback, ∃ by
/// post-composition, δ the class of the diagonal.
Doctrine weak_subobjects(const CatPtr& cat);
/// Sub_C: subobjects by mono classes, reindexing by pullback, δ the diagonal
/// class, ∃ by images where they exist.
Doctrine subobjects_doctrine(const CatPtr& cat);

/// The lazy doctrine A ↦ H^A over a generated base, for a
/// finite chain H.
class LocalicDoctrine {
 public:
  LocalicDoctrine(std::vector<std::string> levels, GenCat base);

  const GenCat& base() const { return base_; }
  const std::vector<std::string>& levels() const { return levels_; }
  using Valuation = std::vector<int>;

  bool leq(const Valuation& x, const Valuation& y) const;
  Valuation meet(const Valuation& x, const Valuation& y) const;
  Valuation top(const GenCat::Word& a) const;
  /// Precomposition with the function given by its image vector.
  Valuation reindex(const std::vector<int>& image, const Valuation& x) const;
  /// Pointwise join over the discarded coordinate of A×B → A.
  Valuation exists_first(const GenCat::Word& a, const GenCat::Word& b, const Valuation& x) const;
  Valuation delta(const GenCat::Word& a) const;
  /// ε_α(a) = least b with α(a,b) maximal.
  std::vector<int> epsilon(const GenCat::Word& a, const GenCat::Word& b, const Valuation& x) const;

  std::size_t encode(const Valuation& x) const;
  Valuation decode(std::size_t size, std::size_t index) const;

  /// Tabulates the doctrine over objects of length ≤ bound.
  Doctrine materialize(std::size_t bound) const;

 private:
  std::vector<std::string> levels_;
  GenCat base_;
};

}  // namespace doctrina
