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
#include <memory>
#include <tuple>
#include <optional>
#include <string>
#include <vector>

#include "doctrina/doctrine.hpp"

namespace doctrina {

struct Span {
  int line = 0;
  int column = 0;
};

struct Signature {
  struct Relation {
    std::string name;
    std::vector<int> arity;
  };
  struct Constant {
    std::string name;
    int sort = 0;
  };
  struct Function {
    std::string name;
    std::vector<int> args;
    int result = 0;
  };
  std::vector<std::string> sorts;
  std::vector<Relation> relations;
  std::vector<Constant> constants;
  std::vector<Function> functions;

  int find_sort(const std::string& name) const;
  int find_relation(const std::string& name) const;
  int find_constant(const std::string& name) const;
  int find_function(const std::string& name) const;
};

struct Term {
  enum class Kind { kVar, kConst, kApp };
  Kind kind = Kind::kVar;
  std::string name;
  int symbol = -1;  // constant or function index
  std::vector<Term> args;
  Span span;
};

struct Formula {
  enum class Kind { kTop, kAnd, kEq, kAtom, kExists };
  Kind kind = Kind::kTop;
  int relation = -1;
  std::vector<Term> terms;         // atom arguments or the two sides of '='
  std::vector<Formula> children;   // two conjuncts, or the body of ∃
  std::string var;                 // bound variable of ∃
  int sort = -1;
  Span span;
};

using Context = std::vector<std::pair<std::string, int>>;

struct Sequent {
  Context context;
  Formula antecedent;
  Formula succedent;
  Span span;
};

struct Theory {
  Signature signature;
  std::vector<Sequent> axioms;
};

/// Line-oriented theory files: sort, rel, const, fun and axiom lines; '#'
/// starts a comment. Throws SyntaxError (with line:col) or SortError.
Theory parse_theory(const std::string& text);
/// "<ctx> | phi |- psi" where ctx is "x:s, y:s" or empty.
Sequent parse_sequent(const Signature& sig, const std::string& text);
/// A formula whose free variables get their sorts from their positions.
std::pair<Context, Formula> parse_query(const Signature& sig, const std::string& text);
std::string to_string(const Signature& sig, const Formula& phi);

/// ∃ȳ.(atoms) over nodes: rigid nodes (classes of context variables and
/// signature constants) come first, then bound nodes.
struct CanonicalQuery {
  struct Atom {
    int relation;
    std::vector<int> args;
    bool operator<(const Atom& o) const { return std::tie(relation, args) < std::tie(o.relation, o.args); }
    bool operator==(const Atom& o) const { return relation == o.relation && args == o.args; }
  };
  std::vector<int> context;          // sorts of the context variables
  std::vector<int> rigid_node;       // context variables, then constants -> node
  int num_rigid = 0;
  std::vector<int> node_sort;
  std::vector<std::string> node_name;
  std::vector<Atom> atoms;           // sorted, unique
  bool merges_constants = false;

  int num_bound() const { return static_cast<int>(node_sort.size()) - num_rigid; }
  bool operator==(const CanonicalQuery& o) const;
};

/// Throws UnsupportedFunctionSymbol on applications of function symbols.
CanonicalQuery normalize(const Signature& sig, const Context& ctx, const Formula& phi);
/// The query as a formula over the context.
Formula to_formula(const Signature& sig, const Context& ctx, const CanonicalQuery& q);
std::string to_string(const Signature& sig, const Context& ctx, const CanonicalQuery& q);

/// Homomorphism from `from` to `to` fixing rigid items; lexicographically
/// least under the node order. Empty when none exists.
std::optional<std::vector<int>> find_homomorphism(const CanonicalQuery& from, const CanonicalQuery& to);
/// The core: bound nodes removed while an equivalent retract exists, then
/// canonically relabelled.
CanonicalQuery core(const CanonicalQuery& q);

struct Entailment {
  bool verdict = false;
  /// Bound variable of ψ -> term of Γ (or a bound variable of φ). From
  /// formulas, every ∃-variable of ψ is listed.
  std::vector<std::pair<std::string, std::string>> witness;
  /// Canonical instance of φ when the verdict is false.
  Json countermodel;
};
/// Throws UnsupportedTheory when `theory` has axioms.
Entailment entails_empty(const Theory& theory, const Context& ctx, const Formula& phi, const Formula& psi);
Entailment entails_empty(const Signature& sig, const CanonicalQuery& phi, const CanonicalQuery& psi);

/// Tabulated fragment of the syntactic doctrine over contexts of at most
/// `ctx_bound` variables with classes of at most `size_bound` atoms and
/// `size_bound` bound variables.
struct SyntacticFragment {
  std::shared_ptr<Doctrine> doctrine;
  Subdoctrine horn;
  std::vector<std::vector<int>> contexts;                  // object -> sorts
  std::vector<std::vector<CanonicalQuery>> elements;       // object -> element -> core
  std::vector<std::vector<int>> substitutions;  // arrow -> term per target variable
};

/// The syntactic doctrine of a relational signature over the empty theory,
/// answering queries without enumerating fibers.
class SyntacticDoctrine {
 public:
  explicit SyntacticDoctrine(Theory theory);

  const Signature& signature() const { return theory_.signature; }
  bool leq(const CanonicalQuery& phi, const CanonicalQuery& psi) const;
  CanonicalQuery top(const std::vector<int>& ctx) const;
  CanonicalQuery meet(const CanonicalQuery& phi, const CanonicalQuery& psi) const;
  /// ψ[σ] for σ given as one term per variable of ψ's context; a term is a
  /// variable index of `ctx` or -(1 + constant index).
  CanonicalQuery reindex(const std::vector<int>& ctx, const std::vector<int>& sigma, const CanonicalQuery& psi) const;
  /// Quantifies the variables not in `keep` (ascending indices).
  CanonicalQuery exists(const CanonicalQuery& phi, const std::vector<int>& keep) const;
  /// x_i = x'_i over the context ctx·ctx.
  CanonicalQuery delta(const std::vector<int>& ctx) const;

  SyntacticFragment materialize(std::size_t ctx_bound, std::size_t size_bound) const;

 private:
  Theory theory_;
};

}  // namespace doctrina
