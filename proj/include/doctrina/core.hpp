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

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "doctrina/error.hpp"
#include "doctrina/report.hpp"

namespace doctrina {

using Index = std::int32_t;
inline constexpr Index kNone = -1;

inline std::uint64_t pack(Index a, Index b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

/// Chosen product datum: the product object with its two projections.
struct Product {
  Index object = kNone;
  Index first = kNone;
  Index second = kNone;
};

/// A finite category with chosen terminal object and chosen (possibly
/// partial) binary products. Bounded materializations of infinite bases
/// leave products absent when the product object falls outside the bound;
/// every consumer treats an absent product as a skipped cell.
///
/// Identities compose automatically. Composites of non-identity arrows come
/// either from an explicit table or from a composer callback installed by
/// derived constructions.
class FinCat {
 public:
  using Composer = std::function<Index(Index g, Index f)>;

  FinCat() = default;
  FinCat(const FinCat& other);
  FinCat& operator=(const FinCat& other);
  FinCat(FinCat&&) noexcept = default;
  FinCat& operator=(FinCat&&) noexcept = default;

  Index add_object(std::string name);
  Index add_morphism(std::string name, Index dom, Index cod);
  /// Adds a morphism and marks it as the identity of `obj`.
  Index add_identity(Index obj, std::string name = {});
  void set_composite(Index g, Index f, Index gf);
  void set_composer(Composer composer) { composer_ = std::move(composer); }
  void set_terminal(Index obj) { terminal_ = obj; }
  void set_product(Index a, Index b, Product p);

  std::size_t num_objects() const { return object_names_.size(); }
  std::size_t num_morphisms() const { return dom_.size(); }
  const std::string& object_name(Index a) const { return object_names_.at(a); }
  const std::string& morphism_name(Index f) const { return morphism_names_.at(f); }
  Index find_object(const std::string& name) const;
  Index find_morphism(const std::string& name) const;

  Index dom(Index f) const { return dom_[f]; }
  Index cod(Index f) const { return cod_[f]; }
  Index identity(Index a) const { return identity_.at(a); }
  bool is_identity(Index f) const { return identity_[dom_[f]] == f; }
  const std::vector<Index>& hom(Index a, Index b) const;

  /// g∘f. Throws MalformedTable when the pair is composable but no
  /// composite is recorded.
  Index compose(Index g, Index f) const;
  /// g∘f or kNone when no composite is recorded.
  Index try_compose(Index g, Index f) const;
  Index terminal() const { return terminal_; }
  /// The unique arrow a → terminal, or kNone.
  Index bang(Index a) const;
  const Product* product(Index a, Index b) const;
  bool has_product(Index a, Index b) const { return product(a, b) != nullptr; }
  /// ⟨f,g⟩: the mediating arrow into the chosen product of cod f and cod g,
  /// or kNone when that product is absent or no mediating arrow exists.
  Index pair(Index f, Index g) const;
  /// f×g between chosen products, or kNone.
  Index cross(Index f, Index g) const;
  /// The diagonal ⟨id,id⟩ of `a`, or kNone.
  Index diagonal(Index a) const;

  const std::unordered_map<std::uint64_t, Product>& products() const { return products_; }

 private:
  std::vector<std::string> object_names_;
  std::vector<std::string> morphism_names_;
  std::vector<Index> dom_, cod_, identity_;
  std::unordered_map<std::uint64_t, std::vector<Index>> homs_;
  std::unordered_map<std::uint64_t, Index> composites_;
  std::unordered_map<std::uint64_t, Product> products_;
  std::unordered_map<std::string, Index> object_index_, morphism_index_;
  Composer composer_;
  Index terminal_ = kNone;
  mutable std::unordered_map<std::uint64_t, Index> pair_cache_;
  mutable std::unique_ptr<std::mutex> pair_mutex_ = std::make_unique<std::mutex>();
};

using CatPtr = std::shared_ptr<const FinCat>;

/// Builds the thin category of a finite poset given by its order matrix
/// (row-major, `order[i*n+j]` iff i ≤ j). Products are meets, the terminal
/// object is the top; both must exist.
FinCat poset_category(const std::vector<std::string>& names, const std::vector<std::uint8_t>& order);

/// Reflexive-transitive closure of a generating relation given as pairs.
std::vector<std::uint8_t> order_closure(std::size_t n, const std::vector<std::pair<Index, Index>>& pairs);

/// Finite meet-semilattice. In bounded fibers a meet may be absent (kNone)
/// when the glb lies outside the bound; comparable pairs always have one.
struct MeetSL {
  std::vector<std::string> names;
  std::vector<std::uint8_t> order;
  std::vector<Index> meets;
  Index top = kNone;

  std::size_t size() const { return names.size(); }
  bool leq(Index a, Index b) const { return order[static_cast<std::size_t>(a) * size() + b] != 0; }
  Index meet(Index a, Index b) const { return meets[static_cast<std::size_t>(a) * size() + b]; }
  Index find(const std::string& name) const;

  /// Fills meets with greatest lower bounds where one exists and sets top
  /// to the maximum (kNone when there is none).
  static MeetSL from_order(std::vector<std::string> names, std::vector<std::uint8_t> order);
  Report validate() const;
};

/// Quotient of a finite preorder by x≅y iff x≤y≤x.
struct PosetReflection {
  std::vector<Index> class_of;        // element -> class
  std::vector<Index> representative;  // class -> first element of the class
  std::vector<std::uint8_t> order;    // classes, row-major

  std::size_t size() const { return representative.size(); }
  bool leq(Index a, Index b) const { return order[static_cast<std::size_t>(a) * size() + b] != 0; }
};

/// Throws NotPreorder when reflexivity or transitivity fails.
PosetReflection poset_reflection(std::size_t n, const std::function<bool(Index, Index)>& leq);

/// Finitely generated cartesian category of non-empty finite sets: objects
/// are words over seed sets, arrows are all functions between the underlying
/// products. Hom sets are computed without bounds; only object listing and
/// materialization take one.
class GenCat {
 public:
  struct Seed {
    std::string name;
    std::vector<std::string> elements;
  };
  using Word = std::vector<int>;

  explicit GenCat(std::vector<Seed> seeds);

  const std::vector<Seed>& seeds() const { return seeds_; }
  std::size_t cardinality(const Word& w) const;
  std::string word_name(const Word& w) const;
  /// All words of length ≤ bound, by length then lexicographically.
  std::vector<Word> enumerate_objects(std::size_t bound) const;
  /// Components of the tuple with the given index (first coordinate most
  /// significant).
  std::vector<int> decode(const Word& w, std::size_t index) const;
  std::size_t encode(const Word& w, const std::vector<int>& components) const;

  /// Objects: words of length ≤ bound; arrows: all functions; products:
  /// concatenation where it stays within the bound. Arrows are named
  /// `dom->cod:[i0,i1,...]` by the image of each tuple index.
  FinCat materialize(std::size_t bound) const;
  /// Words of the materialized objects, index-aligned with `materialize`.
  std::vector<Word> materialized_words(std::size_t bound) const { return enumerate_objects(bound); }

 private:
  std::vector<Seed> seeds_;
};

Report validate_base(const FinCat& cat);
Report validate_base(const GenCat& cat, std::size_t bound);

/// The chosen product of a and b; NoSuchPair when absent.
Product product_of(const FinCat& cat, Index a, Index b);
/// ⟨f,g⟩; NoSuchPair when domains differ or no product/mediator exists.
Index pair_of(const FinCat& cat, Index f, Index g);

/// Full subcategory on `objects` (kept in the given order). Products are
/// kept when the product object is also retained. `object_map` and
/// `morphism_map` send new indices to old ones.
struct Subcategory {
  FinCat cat;
  std::vector<Index> object_map;
  std::vector<Index> morphism_map;
  std::vector<Index> object_inverse;    // old -> new or kNone
  std::vector<Index> morphism_inverse;  // old -> new or kNone
};
Subcategory full_subcategory(const FinCat& cat, const std::vector<Index>& objects);

}  // namespace doctrina
