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

#include "doctrina/reglog.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace doctrina {

namespace {

template <typename T>
int find_named(const std::vector<T>& v, const std::string& name) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].name == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

int Signature::find_sort(const std::string& name) const {
  auto it = std::find(sorts.begin(), sorts.end(), name);
  return it == sorts.end() ? -1 : static_cast<int>(it - sorts.begin());
}
int Signature::find_relation(const std::string& name) const { return find_named(relations, name); }
int Signature::find_constant(const std::string& name) const { return find_named(constants, name); }
int Signature::find_function(const std::string& name) const { return find_named(functions, name); }

namespace {

struct Token {
  enum class Kind { kIdent, kSymbol, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  Span span;
};

std::vector<Token> tokenize(const std::string& text, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    Span span{line, static_cast<int>(i) + 1};
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\'')) ++j;
      out.push_back({Token::Kind::kIdent, text.substr(i, j - i), span});
      i = j;
    } else if (text.compare(i, 2, "|-") == 0 || text.compare(i, 2, "->") == 0) {
      out.push_back({Token::Kind::kSymbol, text.substr(i, 2), span});
      i += 2;
    } else if (std::string("()&=.:,|*").find(ch) != std::string::npos) {
      out.push_back({Token::Kind::kSymbol, std::string(1, ch), span});
      ++i;
    } else {
      throw Error(ErrorCode::kSyntaxError, std::to_string(line) + ":" + std::to_string(i + 1) + ": unexpected character '" + ch + "'");
    }
  }
  out.push_back({Token::Kind::kEnd, "", {line, static_cast<int>(text.size()) + 1}});
  return out;
}

std::string where(const Span& s) { return std::to_string(s.line) + ":" + std::to_string(s.column) + ": "; }

// Recursive-descent parser with sort checking. Variables are looked up in
// the scope; when `infer` is set, unknown variables are collected with sorts
// inferred from their positions.
class Parser {
 public:
  Parser(const Signature& sig, std::vector<Token> tokens) : sig_(sig), toks_(std::move(tokens)) {}

  std::vector<std::pair<std::string, int>> scope;
  std::vector<std::pair<std::string, int>> inferred;
  bool infer = false;

  const Token& peek() const { return toks_[pos_]; }
  bool at(const std::string& s) const { return peek().kind == Token::Kind::kSymbol && peek().text == s; }
  bool at_end() const { return peek().kind == Token::Kind::kEnd; }
  Token next() { return toks_[pos_++]; }
  void expect(const std::string& s) {
    if (!at(s)) throw Error(ErrorCode::kSyntaxError, where(peek().span) + "expected '" + s + "'");
    ++pos_;
  }
  void expect_end() {
    if (!at_end()) throw Error(ErrorCode::kSyntaxError, where(peek().span) + "unexpected '" + peek().text + "'");
  }
  std::string ident() {
    if (peek().kind != Token::Kind::kIdent) throw Error(ErrorCode::kSyntaxError, where(peek().span) + "expected a name");
    return next().text;
  }
  int sort_name() {
    Span s = peek().span;
    std::string name = ident();
    int v = sig_.find_sort(name);
    if (v < 0) throw Error(ErrorCode::kSortError, where(s) + "unknown sort '" + name + "'");
    return v;
  }

  Context context() {
    Context ctx;
    if (at("|")) return ctx;
    while (true) {
      std::string v = ident();
      expect(":");
      ctx.emplace_back(v, sort_name());
      if (!at(",")) break;
      next();
    }
    return ctx;
  }

  Formula formula() {
    Formula left = unary();
    while (at("&")) {
      Span s = next().span;
      Formula right = unary();
      Formula f;
      f.kind = Formula::Kind::kAnd;
      f.span = s;
      f.children = {std::move(left), std::move(right)};
      left = std::move(f);
    }
    return left;
  }

 private:
  Formula unary() {
    const Token& t = peek();
    if (at("(")) {
      next();
      Formula f = formula();
      expect(")");
      return f;
    }
    if (t.kind == Token::Kind::kIdent && (t.text == "T" || t.text == "true")) {
      Formula f;
      f.span = next().span;
      return f;
    }
    if (t.kind == Token::Kind::kIdent && t.text == "exists") {
      Span s = next().span;
      std::vector<std::pair<std::string, int>> vars;
      while (true) {
        std::string v = ident();
        expect(":");
        vars.emplace_back(v, sort_name());
        if (!at(",")) break;
        next();
      }
      expect(".");
      for (const auto& v : vars) scope.push_back(v);
      Formula body = formula();
      scope.resize(scope.size() - vars.size());
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        Formula f;
        f.kind = Formula::Kind::kExists;
        f.var = it->first;
        f.sort = it->second;
        f.span = s;
        f.children = {std::move(body)};
        body = std::move(f);
      }
      return body;
    }
    const Token& after = toks_[pos_ + 1];
    if (t.kind == Token::Kind::kIdent && sig_.find_relation(t.text) >= 0 && after.kind == Token::Kind::kSymbol &&
        after.text == "(") {
      Span s = t.span;
      int rel = sig_.find_relation(next().text);
      expect("(");
      Formula f;
      f.kind = Formula::Kind::kAtom;
      f.relation = rel;
      f.span = s;
      const auto& arity = sig_.relations[rel].arity;
      if (!at(")")) {
        while (true) {
          int expected = f.terms.size() < arity.size() ? arity[f.terms.size()] : -1;
          f.terms.push_back(term(expected));
          if (!at(",")) break;
          next();
        }
      }
      expect(")");
      if (f.terms.size() != arity.size())
        throw Error(ErrorCode::kSortError, where(s) + "relation '" + sig_.relations[rel].name + "' expects " +
                                               std::to_string(arity.size()) + " arguments");
      return f;
    }
    Span s = t.span;
    Term lhs = term(-1);
    expect("=");
    Term rhs = term(-1);
    int ls = sort_of(lhs), rs = sort_of(rhs);
    if (ls < 0 && rs >= 0) ls = settle(lhs, rs);
    if (rs < 0 && ls >= 0) rs = settle(rhs, ls);
    if (ls < 0 || rs < 0) throw Error(ErrorCode::kSortError, where(s) + "cannot infer the sort of an equation");
    if (ls != rs) throw Error(ErrorCode::kSortError, where(s) + "equation between different sorts");
    Formula f;
    f.kind = Formula::Kind::kEq;
    f.span = s;
    f.terms = {std::move(lhs), std::move(rhs)};
    return f;
  }

  Term term(int expected) {
    Span s = peek().span;
    std::string name = ident();
    Term t;
    t.name = name;
    t.span = s;
    if (at("(")) {
      int fn = sig_.find_function(name);
      if (fn < 0) throw Error(ErrorCode::kSortError, where(s) + "unknown function symbol '" + name + "'");
      next();
      t.kind = Term::Kind::kApp;
      t.symbol = fn;
      const auto& args = sig_.functions[fn].args;
      if (!at(")")) {
        while (true) {
          int e = t.args.size() < args.size() ? args[t.args.size()] : -1;
          t.args.push_back(term(e));
          if (!at(",")) break;
          next();
        }
      }
      expect(")");
      if (t.args.size() != args.size()) throw Error(ErrorCode::kSortError, where(s) + "wrong number of arguments to '" + name + "'");
      check_sort(s, sig_.functions[fn].result, expected);
      return t;
    }
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) {
        check_sort(s, it->second, expected);
        return t;
      }
    int c = sig_.find_constant(name);
    if (c >= 0) {
      t.kind = Term::Kind::kConst;
      t.symbol = c;
      check_sort(s, sig_.constants[c].sort, expected);
      return t;
    }
    if (!infer) throw Error(ErrorCode::kSortError, where(s) + "unsorted variable '" + name + "'");
    for (auto& v : inferred)
      if (v.first == name) {
        if (v.second < 0) v.second = expected;
        else check_sort(s, v.second, expected);
        return t;
      }
    inferred.emplace_back(name, expected);
    return t;
  }

  void check_sort(const Span& s, int actual, int expected) const {
    if (expected >= 0 && actual >= 0 && actual != expected)
      throw Error(ErrorCode::kSortError, where(s) + "expected sort '" + sig_.sorts[expected] + "' but found '" +
                                             sig_.sorts[actual] + "'");
  }

  int sort_of(const Term& t) const {
    if (t.kind == Term::Kind::kConst) return sig_.constants[t.symbol].sort;
    if (t.kind == Term::Kind::kApp) return sig_.functions[t.symbol].result;
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == t.name) return it->second;
    for (const auto& v : inferred)
      if (v.first == t.name) return v.second;
    return -1;
  }
  int settle(const Term& t, int sort) {
    for (auto& v : inferred)
      if (v.first == t.name && v.second < 0) v.second = sort;
    return sort;
  }

  const Signature& sig_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Theory parse_theory(const std::string& text) {
  Theory th;
  Signature& sig = th.signature;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string body = raw.substr(0, raw.find('#'));
    auto toks = tokenize(body, line);
    if (toks.size() == 1) continue;
    Parser p(sig, toks);
    Span s = p.peek().span;
    std::string kw = p.ident();
    auto declared = [&](const std::string& name) {
      return sig.find_sort(name) >= 0 || sig.find_relation(name) >= 0 || sig.find_constant(name) >= 0 ||
             sig.find_function(name) >= 0;
    };
    if (kw == "sort") {
      std::string name = p.ident();
      if (declared(name)) throw Error(ErrorCode::kSyntaxError, where(s) + "duplicate name '" + name + "'");
      sig.sorts.push_back(name);
      p.expect_end();
    } else if (kw == "rel" || kw == "fun") {
      std::string name = p.ident();
      if (declared(name)) throw Error(ErrorCode::kSyntaxError, where(s) + "duplicate name '" + name + "'");
      p.expect(":");
      std::vector<int> sorts;
      while (!p.at_end() && !p.at("->")) {
        sorts.push_back(p.sort_name());
        if (p.at("*") || p.at(",")) p.next();
      }
      if (kw == "rel") {
        p.expect_end();
        sig.relations.push_back({name, sorts});
      } else {
        p.expect("->");
        int result = p.sort_name();
        p.expect_end();
        sig.functions.push_back({name, sorts, result});
      }
    } else if (kw == "const") {
      std::string name = p.ident();
      if (declared(name)) throw Error(ErrorCode::kSyntaxError, where(s) + "duplicate name '" + name + "'");
      p.expect(":");
      int sort = p.sort_name();
      p.expect_end();
      sig.constants.push_back({name, sort});
    } else if (kw == "axiom") {
      Sequent seq;
      seq.span = s;
      seq.context = p.context();
      p.expect("|");
      p.scope = seq.context;
      seq.antecedent = p.formula();
      p.expect("|-");
      seq.succedent = p.formula();
      p.expect_end();
      th.axioms.push_back(std::move(seq));
    } else {
      throw Error(ErrorCode::kSyntaxError, where(s) + "unknown declaration '" + kw + "'");
    }
  }
  return th;
}

Sequent parse_sequent(const Signature& sig, const std::string& text) {
  Parser p(sig, tokenize(text, 1));
  Sequent seq;
  seq.span = p.peek().span;
  seq.context = p.context();
  p.expect("|");
  p.scope = seq.context;
  seq.antecedent = p.formula();
  p.expect("|-");
  seq.succedent = p.formula();
  p.expect_end();
  return seq;
}

std::pair<Context, Formula> parse_query(const Signature& sig, const std::string& text) {
  Parser p(sig, tokenize(text, 1));
  p.infer = true;
  Formula f = p.formula();
  p.expect_end();
  for (const auto& v : p.inferred)
    if (v.second < 0) throw Error(ErrorCode::kSortError, "1:1: cannot infer the sort of '" + v.first + "'");
  return {p.inferred, std::move(f)};
}

namespace {

std::string term_string(const Signature& sig, const Term& t) {
  if (t.kind != Term::Kind::kApp) return t.name;
  std::string s = sig.functions[t.symbol].name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) s += (i ? ", " : "") + term_string(sig, t.args[i]);
  return s + ")";
}

}  // namespace

std::string to_string(const Signature& sig, const Formula& phi) {
  switch (phi.kind) {
    case Formula::Kind::kTop:
      return "T";
    case Formula::Kind::kAnd: {
      auto side = [&](const Formula& f) {
        std::string s = to_string(sig, f);
        return f.kind == Formula::Kind::kExists ? "(" + s + ")" : s;
      };
      return side(phi.children[0]) + " & " + side(phi.children[1]);
    }
    case Formula::Kind::kEq:
      return term_string(sig, phi.terms[0]) + " = " + term_string(sig, phi.terms[1]);
    case Formula::Kind::kAtom: {
      std::string s = sig.relations[phi.relation].name + "(";
      for (std::size_t i = 0; i < phi.terms.size(); ++i) s += (i ? ", " : "") + term_string(sig, phi.terms[i]);
      return s + ")";
    }
    case Formula::Kind::kExists:
      return "exists " + phi.var + ":" + sig.sorts[phi.sort] + ". " + to_string(sig, phi.children[0]);
  }
  return {};
}

bool CanonicalQuery::operator==(const CanonicalQuery& o) const {
  return context == o.context && rigid_node == o.rigid_node && num_rigid == o.num_rigid && node_sort == o.node_sort &&
         atoms == o.atoms && merges_constants == o.merges_constants;
}

namespace {

// A query under construction: slots are the context variables, then the
// constants, then bound variables; equations merge slots.
struct Draft {
  std::vector<int> context;
  std::vector<int> slot_sort;
  std::vector<std::string> slot_name;
  std::vector<std::pair<int, int>> eqs;
  std::vector<CanonicalQuery::Atom> atoms;

  Draft(const Signature& sig, const std::vector<int>& ctx, const std::vector<std::string>& names) : context(ctx) {
    for (std::size_t i = 0; i < ctx.size(); ++i) add(ctx[i], names[i]);
    for (const auto& c : sig.constants) add(c.sort, c.name);
  }
  int add(int sort, std::string name) {
    slot_sort.push_back(sort);
    slot_name.push_back(std::move(name));
    return static_cast<int>(slot_sort.size()) - 1;
  }
  // Copies q's nodes in: rigid nodes land on the slots of their items
  // (item i -> item_slot[i]); bound nodes become new slots. Returns node -> slot.
  std::vector<int> embed(const CanonicalQuery& q, const std::vector<int>& item_slot) {
    std::vector<int> slot(q.node_sort.size(), -1);
    for (std::size_t i = 0; i < q.rigid_node.size(); ++i) {
      int n = q.rigid_node[i];
      if (slot[n] < 0) slot[n] = item_slot[i];
      else eqs.emplace_back(slot[n], item_slot[i]);
    }
    for (std::size_t n = q.num_rigid; n < q.node_sort.size(); ++n) slot[n] = add(q.node_sort[n], q.node_name[n]);
    for (const auto& a : q.atoms) {
      CanonicalQuery::Atom b{a.relation, {}};
      for (int x : a.args) b.args.push_back(slot[x]);
      atoms.push_back(std::move(b));
    }
    return slot;
  }
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

CanonicalQuery assemble(const Signature& sig, const Draft& d, std::vector<int>* slot_node = nullptr) {
  std::size_t n = d.slot_sort.size();
  std::size_t items = d.context.size() + sig.constants.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [a, b] : d.eqs) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  CanonicalQuery q;
  q.context = d.context;
  std::vector<int> node(n, -1);
  std::vector<int> const_of(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (s == items) q.num_rigid = static_cast<int>(q.node_sort.size());
    int r = find_root(parent, static_cast<int>(s));
    if (node[r] < 0) {
      node[r] = static_cast<int>(q.node_sort.size());
      q.node_sort.push_back(d.slot_sort[s]);
      q.node_name.push_back(d.slot_name[s]);
    }
    if (s < items) {
      q.rigid_node.push_back(node[r]);
      if (s >= d.context.size()) {
        if (const_of[r] >= 0) q.merges_constants = true;
        const_of[r] = static_cast<int>(s);
      }
    }
  }
  if (items == n) q.num_rigid = static_cast<int>(q.node_sort.size());
  if (slot_node != nullptr)
    for (std::size_t s = 0; s < n; ++s) slot_node->push_back(node[find_root(parent, static_cast<int>(s))]);
  for (const auto& a : d.atoms) {
    CanonicalQuery::Atom b{a.relation, {}};
    for (int x : a.args) b.args.push_back(node[find_root(parent, x)]);
    q.atoms.push_back(std::move(b));
  }
  std::sort(q.atoms.begin(), q.atoms.end());
  q.atoms.erase(std::unique(q.atoms.begin(), q.atoms.end()), q.atoms.end());
  return q;
}

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

std::vector<int> sorts_of(const Context& ctx) {
  std::vector<int> s;
  for (const auto& v : ctx) s.push_back(v.second);
  return s;
}

std::vector<std::string> names_of(const Context& ctx) {
  std::vector<std::string> s;
  for (const auto& v : ctx) s.push_back(v.first);
  return s;
}

struct Normalizer {
  const Signature& sig;
  Draft& draft;
  std::vector<std::pair<std::string, int>> env;
  std::vector<std::pair<std::string, int>> bound;  // ∃-variable (as renamed) -> slot

  int slot(const Term& t) {
    if (t.kind == Term::Kind::kApp)
      throw Error(ErrorCode::kUnsupportedFunctionSymbol,
                  where(t.span) + "function symbol '" + sig.functions[t.symbol].name + "' is not supported here");
    if (t.kind == Term::Kind::kVar)
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.name) return it->second;
    int c = sig.find_constant(t.name);
    if (c < 0) throw Error(ErrorCode::kSortError, where(t.span) + "unsorted variable '" + t.name + "'");
    return static_cast<int>(draft.context.size()) + c;
  }
  void walk(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::kTop:
        return;
      case Formula::Kind::kAnd:
        walk(f.children[0]);
        walk(f.children[1]);
        return;
      case Formula::Kind::kEq:
        draft.eqs.emplace_back(slot(f.terms[0]), slot(f.terms[1]));
        return;
      case Formula::Kind::kAtom: {
        CanonicalQuery::Atom a{f.relation, {}};
        for (const auto& t : f.terms) a.args.push_back(slot(t));
        draft.atoms.push_back(std::move(a));
        return;
      }
      case Formula::Kind::kExists: {
        std::string name = f.var;
        auto taken = [&](const std::string& n) {
          return std::find(draft.slot_name.begin(), draft.slot_name.end(), n) != draft.slot_name.end();
        };
        while (taken(name)) name += "'";
        env.emplace_back(f.var, draft.add(f.sort, name));
        bound.emplace_back(name, env.back().second);
        walk(f.children[0]);
        env.pop_back();
        return;
      }
    }
  }
};

// Also reports the node of every ∃-variable.
CanonicalQuery normalize_tracked(const Signature& sig, const Context& ctx, const Formula& phi,
                                 std::vector<std::pair<std::string, int>>* bound_nodes) {
  Draft d(sig, sorts_of(ctx), names_of(ctx));
  Normalizer norm{sig, d, {}, {}};
  for (std::size_t i = 0; i < ctx.size(); ++i) norm.env.emplace_back(ctx[i].first, static_cast<int>(i));
  norm.walk(phi);
  std::vector<int> slot_node;
  CanonicalQuery q = assemble(sig, d, &slot_node);
  if (bound_nodes != nullptr)
    for (const auto& [name, slot] : norm.bound) bound_nodes->emplace_back(name, slot_node[slot]);
  return q;
}

}  // namespace

CanonicalQuery normalize(const Signature& sig, const Context& ctx, const Formula& phi) {
  return normalize_tracked(sig, ctx, phi, nullptr);
}

std::optional<std::vector<int>> find_homomorphism(const CanonicalQuery& from, const CanonicalQuery& to) {
  if (from.context != to.context || from.rigid_node.size() != to.rigid_node.size()) return std::nullopt;
  std::vector<int> h(from.node_sort.size(), -1);
  for (std::size_t i = 0; i < from.rigid_node.size(); ++i) {
    int& slot = h[from.rigid_node[i]];
    if (slot < 0) slot = to.rigid_node[i];
    else if (slot != to.rigid_node[i]) return std::nullopt;
  }
  auto holds = [&](const CanonicalQuery::Atom* a) {
    CanonicalQuery::Atom img{a->relation, {}};
    for (int x : a->args) img.args.push_back(h[x]);
    return std::binary_search(to.atoms.begin(), to.atoms.end(), img);
  };
  // Atoms over rigid nodes are checked now, the rest once their greatest
  // node is assigned.
  std::vector<std::vector<const CanonicalQuery::Atom*>> due(from.node_sort.size());
  for (const auto& a : from.atoms) {
    int last = a.args.empty() ? -1 : *std::max_element(a.args.begin(), a.args.end());
    if (last < from.num_rigid) {
      if (!holds(&a)) return std::nullopt;
    } else {
      due[last].push_back(&a);
    }
  }
  int n = static_cast<int>(from.node_sort.size());
  int m = static_cast<int>(to.node_sort.size());
  std::function<bool(int)> extend = [&](int b) {
    if (b == n) return true;
    for (int t = 0; t < m; ++t) {
      if (to.node_sort[t] != from.node_sort[b]) continue;
      h[b] = t;
      bool ok = true;
      for (const auto* a : due[b])
        if (!holds(a)) {
          ok = false;
          break;
        }
      if (ok && extend(b + 1)) return true;
    }
    h[b] = -1;
    return false;
  };
  if (!extend(from.num_rigid)) return std::nullopt;
  return h;
}

namespace {

CanonicalQuery drop_node(const CanonicalQuery& q, int b) {
  CanonicalQuery r = q;
  r.node_sort.erase(r.node_sort.begin() + b);
  r.node_name.erase(r.node_name.begin() + b);
  r.atoms.clear();
  for (const auto& a : q.atoms) {
    if (std::find(a.args.begin(), a.args.end(), b) != a.args.end()) continue;
    CanonicalQuery::Atom c{a.relation, {}};
    for (int x : a.args) c.args.push_back(x > b ? x - 1 : x);
    r.atoms.push_back(std::move(c));
  }
  return r;
}

CanonicalQuery permute_bound(const CanonicalQuery& q, const std::vector<int>& order) {
  // order[k] = old bound node placed at position num_rigid + k.
  CanonicalQuery r = q;
  std::vector<int> to(q.node_sort.size());
  std::iota(to.begin(), to.begin() + q.num_rigid, 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    to[order[k]] = q.num_rigid + static_cast<int>(k);
    r.node_sort[q.num_rigid + k] = q.node_sort[order[k]];
    r.node_name[q.num_rigid + k] = q.node_name[order[k]];
  }
  for (auto& a : r.atoms)
    for (int& x : a.args) x = to[x];
  std::sort(r.atoms.begin(), r.atoms.end());
  return r;
}

constexpr int kMaxCanonicalBound = 8;

// Relabels bound nodes to the ordering with nondecreasing sorts and the least
// atom list, then renames them y1, y2, ... avoiding rigid names.
CanonicalQuery canonical_relabel(const CanonicalQuery& q) {
  int k = q.num_bound();
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), q.num_rigid);
  auto by_sort = [&](int a, int b) { return std::tie(q.node_sort[a], a) < std::tie(q.node_sort[b], b); };
  std::sort(order.begin(), order.end(), by_sort);
  CanonicalQuery best = permute_bound(q, order);
  if (k <= kMaxCanonicalBound) {
    auto same_sort_next = [&](std::vector<int>& o) {
      // Next permutation within each block of equal sorts, odometer style.
      for (int end = k; end > 0;) {
        int start = end - 1;
        while (start > 0 && q.node_sort[o[start - 1]] == q.node_sort[o[end - 1]]) --start;
        if (std::next_permutation(o.begin() + start, o.begin() + end)) return true;
        end = start;
      }
      return false;
    };
    std::vector<int> o = order;
    while (same_sort_next(o)) {
      CanonicalQuery c = permute_bound(q, o);
      if (c.atoms < best.atoms) best = std::move(c);
    }
  }
  std::set<std::string> rigid(best.node_name.begin(), best.node_name.begin() + best.num_rigid);
  int next = 1;
  for (int b = best.num_rigid; b < static_cast<int>(best.node_sort.size()); ++b) {
    std::string name;
    do name = "y" + std::to_string(next++);
    while (rigid.count(name));
    best.node_name[b] = name;
  }
  return best;
}

}  // namespace

CanonicalQuery core(const CanonicalQuery& q) {
  CanonicalQuery cur = q;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int b = static_cast<int>(cur.node_sort.size()) - 1; b >= cur.num_rigid; --b) {
      CanonicalQuery smaller = drop_node(cur, b);
      if (find_homomorphism(cur, smaller)) {
        cur = std::move(smaller);
        changed = true;
        break;
      }
    }
  }
  return canonical_relabel(cur);
}

namespace {

Term node_term(const Signature& sig, const Context& ctx, const CanonicalQuery& q, int node) {
  Term t;
  if (node >= q.num_rigid) {
    t.name = q.node_name[node];
    return t;
  }
  std::size_t item = std::find(q.rigid_node.begin(), q.rigid_node.end(), node) - q.rigid_node.begin();
  if (item < ctx.size()) {
    t.name = ctx[item].first;
  } else {
    t.kind = Term::Kind::kConst;
    t.symbol = static_cast<int>(item - ctx.size());
    t.name = sig.constants[t.symbol].name;
  }
  return t;
}

Formula conjoin(Formula a, Formula b) {
  if (a.kind == Formula::Kind::kTop) return b;
  if (b.kind == Formula::Kind::kTop) return a;
  Formula f;
  f.kind = Formula::Kind::kAnd;
  f.children = {std::move(a), std::move(b)};
  return f;
}

}  // namespace

Formula to_formula(const Signature& sig, const Context& ctx, const CanonicalQuery& q) {
  Formula body;
  for (std::size_t i = 0; i < q.rigid_node.size(); ++i) {
    Term rep = node_term(sig, ctx, q, q.rigid_node[i]);
    Term self;
    if (i < ctx.size()) {
      self.name = ctx[i].first;
    } else {
      self.kind = Term::Kind::kConst;
      self.symbol = static_cast<int>(i - ctx.size());
      self.name = sig.constants[self.symbol].name;
    }
    if (rep.name == self.name) continue;
    Formula eq;
    eq.kind = Formula::Kind::kEq;
    eq.terms = {rep, self};
    body = conjoin(std::move(body), std::move(eq));
  }
  for (const auto& a : q.atoms) {
    Formula f;
    f.kind = Formula::Kind::kAtom;
    f.relation = a.relation;
    for (int x : a.args) f.terms.push_back(node_term(sig, ctx, q, x));
    body = conjoin(std::move(body), std::move(f));
  }
  for (int b = static_cast<int>(q.node_sort.size()) - 1; b >= q.num_rigid; --b) {
    Formula f;
    f.kind = Formula::Kind::kExists;
    f.var = q.node_name[b];
    f.sort = q.node_sort[b];
    f.children = {std::move(body)};
    body = std::move(f);
  }
  return body;
}

std::string to_string(const Signature& sig, const Context& ctx, const CanonicalQuery& q) {
  return to_string(sig, to_formula(sig, ctx, q));
}

Entailment entails_empty(const Theory& theory, const Context& ctx, const Formula& phi, const Formula& psi) {
  if (!theory.axioms.empty())
    throw Error(ErrorCode::kUnsupportedTheory, "entailment is decided only over the empty theory");
  std::vector<std::pair<std::string, int>> vars;
  CanonicalQuery p = normalize(theory.signature, ctx, phi);
  CanonicalQuery q = normalize_tracked(theory.signature, ctx, psi, &vars);
  Entailment e = entails_empty(theory.signature, p, q);
  if (e.verdict) {
    // One entry per ∃-variable of ψ, including those equated to rigid items.
    auto h = find_homomorphism(q, p);
    e.witness.clear();
    for (const auto& [name, node] : vars) e.witness.emplace_back(name, p.node_name[(*h)[node]]);
  } else {
    Json named = Json::object();
    for (std::size_t i = 0; i < ctx.size(); ++i) named[ctx[i].first] = e.countermodel["assignment"][std::to_string(i)];
    e.countermodel["assignment"] = named;
  }
  return e;
}

Entailment entails_empty(const Signature& sig, const CanonicalQuery& phi, const CanonicalQuery& psi) {
  Entailment e;
  auto h = find_homomorphism(psi, phi);
  e.verdict = h.has_value();
  if (h) {
    for (int b = psi.num_rigid; b < static_cast<int>(psi.node_sort.size()); ++b)
      e.witness.emplace_back(psi.node_name[b], phi.node_name[(*h)[b]]);
    return e;
  }
  Json domain = Json::array();
  for (std::size_t n = 0; n < phi.node_sort.size(); ++n)
    domain.push_back({{"name", phi.node_name[n]}, {"sort", sig.sorts[phi.node_sort[n]]}});
  Json assignment = Json::object(), constants = Json::object(), relations = Json::object();
  std::size_t nctx = phi.context.size();
  for (std::size_t i = 0; i < phi.rigid_node.size(); ++i) {
    const std::string& value = phi.node_name[phi.rigid_node[i]];
    if (i < nctx) assignment[std::to_string(i)] = value;
    else constants[sig.constants[i - nctx].name] = value;
  }
  for (const auto& r : sig.relations) relations[r.name] = Json::array();
  for (const auto& a : phi.atoms) {
    Json tuple = Json::array();
    for (int x : a.args) tuple.push_back(phi.node_name[x]);
    relations[sig.relations[a.relation].name].push_back(tuple);
  }
  e.countermodel = {{"domain", domain}, {"assignment", assignment}, {"constants", constants}, {"relations", relations}};
  return e;
}

SyntacticDoctrine::SyntacticDoctrine(Theory theory) : theory_(std::move(theory)) {
  if (!theory_.axioms.empty())
    throw Error(ErrorCode::kUnsupportedTheory, "the syntactic doctrine is built only over the empty theory");
  if (!theory_.signature.functions.empty())
    throw Error(ErrorCode::kUnsupportedFunctionSymbol, "function symbols are not supported by the syntactic doctrine");
}

bool SyntacticDoctrine::leq(const CanonicalQuery& phi, const CanonicalQuery& psi) const {
  return find_homomorphism(psi, phi).has_value();
}

CanonicalQuery SyntacticDoctrine::top(const std::vector<int>& ctx) const {
  return core(assemble(signature(), Draft(signature(), ctx, default_names(ctx.size()))));
}

namespace {

std::vector<int> identity_items(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

CanonicalQuery SyntacticDoctrine::meet(const CanonicalQuery& phi, const CanonicalQuery& psi) const {
  const Signature& sig = signature();
  Draft d(sig, phi.context, default_names(phi.context.size()));
  auto items = identity_items(phi.rigid_node.size());
  d.embed(phi, items);
  d.embed(psi, items);
  return core(assemble(sig, d));
}

CanonicalQuery SyntacticDoctrine::reindex(const std::vector<int>& ctx, const std::vector<int>& sigma,
                                          const CanonicalQuery& psi) const {
  const Signature& sig = signature();
  Draft d(sig, ctx, default_names(ctx.size()));
  std::vector<int> items;
  for (int t : sigma) items.push_back(t >= 0 ? t : static_cast<int>(ctx.size()) - 1 - t);
  for (std::size_t c = 0; c < sig.constants.size(); ++c) items.push_back(static_cast<int>(ctx.size() + c));
  d.embed(psi, items);
  return core(assemble(sig, d));
}

CanonicalQuery SyntacticDoctrine::exists(const CanonicalQuery& phi, const std::vector<int>& keep) const {
  const Signature& sig = signature();
  std::vector<int> ctx;
  for (int i : keep) ctx.push_back(phi.context[i]);
  Draft d(sig, ctx, default_names(ctx.size()));
  std::vector<int> items(phi.rigid_node.size(), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) items[keep[k]] = static_cast<int>(k);
  for (std::size_t i = 0; i < phi.context.size(); ++i)
    if (items[i] < 0) items[i] = d.add(phi.context[i], "z" + std::to_string(i + 1));
  for (std::size_t c = 0; c < sig.constants.size(); ++c)
    items[phi.context.size() + c] = static_cast<int>(ctx.size() + c);
  d.embed(phi, items);
  return core(assemble(sig, d));
}

CanonicalQuery SyntacticDoctrine::delta(const std::vector<int>& ctx) const {
  const Signature& sig = signature();
  std::vector<int> twice = ctx;
  twice.insert(twice.end(), ctx.begin(), ctx.end());
  Draft d(sig, twice, default_names(twice.size()));
  for (std::size_t i = 0; i < ctx.size(); ++i) d.eqs.emplace_back(static_cast<int>(i), static_cast<int>(i + ctx.size()));
  return core(assemble(sig, d));
}

namespace {

std::string query_key(const CanonicalQuery& q) {
  std::string k;
  for (int x : q.rigid_node) k += std::to_string(x) + ",";
  k += "|";
  for (int x : q.node_sort) k += std::to_string(x) + ",";
  k += "|";
  for (const auto& a : q.atoms) {
    k += std::to_string(a.relation) + "(";
    for (int x : a.args) k += std::to_string(x) + ",";
    k += ")";
  }
  return k;
}

// Restricted growth strings over items where an item may only join a block
// of its own sort.
void rigid_partitions(const std::vector<int>& sorts, std::vector<int>& cur, std::vector<int>& block_sort,
                      std::vector<std::vector<int>>& out) {
  std::size_t i = cur.size();
  if (i == sorts.size()) {
    out.push_back(cur);
    return;
  }
  for (std::size_t b = 0; b <= block_sort.size(); ++b) {
    bool fresh = b == block_sort.size();
    if (!fresh && block_sort[b] != sorts[i]) continue;
    if (fresh) block_sort.push_back(sorts[i]);
    cur.push_back(static_cast<int>(b));
    rigid_partitions(sorts, cur, block_sort, out);
    cur.pop_back();
    if (fresh) block_sort.pop_back();
  }
}

void sort_multisets(int num_sorts, std::size_t k, int from, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (int s = from; s < num_sorts; ++s) {
    cur.push_back(s);
    sort_multisets(num_sorts, k, s, cur, out);
    cur.pop_back();
  }
}

void all_tuples(const std::vector<int>& node_sort, const std::vector<int>& arity, std::vector<int>& cur, int relation,
                std::vector<CanonicalQuery::Atom>& out) {
  if (cur.size() == arity.size()) {
    out.push_back({relation, cur});
    return;
  }
  for (std::size_t n = 0; n < node_sort.size(); ++n) {
    if (node_sort[n] != arity[cur.size()]) continue;
    cur.push_back(static_cast<int>(n));
    all_tuples(node_sort, arity, cur, relation, out);
    cur.pop_back();
  }
}

constexpr std::size_t kCandidateBudget = std::size_t{1} << 20;

std::string context_name(const Signature& sig, const std::vector<int>& ctx) {
  std::string s = "(";
  for (std::size_t i = 0; i < ctx.size(); ++i) s += (i ? "," : "") + sig.sorts[ctx[i]];
  return s + ")";
}

// Substitutions between contexts, indexed so composites can be located.
struct SubstitutionIndex {
  std::vector<std::vector<int>> contexts;
  std::vector<int> constant_sort;
  std::map<std::pair<Index, Index>, Index> hom_offset;
  std::vector<std::vector<int>> subs;
  std::vector<Index> dom, cod;

  // Terms of context c with sort s: variables ascending, then constants.
  std::vector<int> terms(Index c, int s) const {
    std::vector<int> t;
    const auto& ctx = contexts[c];
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (ctx[i] == s) t.push_back(static_cast<int>(i));
    for (std::size_t k = 0; k < constant_sort.size(); ++k)
      if (constant_sort[k] == s) t.push_back(-1 - static_cast<int>(k));
    return t;
  }
  Index arrow(Index a, Index b, const std::vector<int>& sigma) const {
    const auto& cod = contexts[b];
    std::size_t idx = 0;
    for (std::size_t k = 0; k < cod.size(); ++k) {
      auto choice = terms(a, cod[k]);
      idx = idx * choice.size() + (std::find(choice.begin(), choice.end(), sigma[k]) - choice.begin());
    }
    return static_cast<Index>(hom_offset.at({a, b}) + idx);
  }
};

}  // namespace

SyntacticFragment SyntacticDoctrine::materialize(std::size_t ctx_bound, std::size_t size_bound) const {
  const Signature& sig = signature();
  const int num_sorts = static_cast<int>(sig.sorts.size());
  SyntacticFragment out;

  // Contexts by length, then lexicographically.
  out.contexts.push_back({});
  for (std::size_t len = 1, from = 0; len <= ctx_bound; ++len) {
    std::size_t to = out.contexts.size();
    for (std::size_t i = from; i < to; ++i)
      if (out.contexts[i].size() == len - 1)
        for (int s = 0; s < num_sorts; ++s) {
          auto w = out.contexts[i];
          w.push_back(s);
          out.contexts.push_back(w);
        }
    from = to;
  }
  const auto num_ctx = static_cast<Index>(out.contexts.size());
  std::map<std::vector<int>, Index> ctx_index;
  for (Index c = 0; c < num_ctx; ++c) ctx_index[out.contexts[c]] = c;

  auto index = std::make_shared<SubstitutionIndex>();
  index->contexts = out.contexts;
  for (const auto& c : sig.constants) index->constant_sort.push_back(c.sort);
  auto terms = [&](Index c, int s) { return index->terms(c, s); };
  auto term_name = [&](int t) { return t >= 0 ? "x" + std::to_string(t + 1) : sig.constants[-1 - t].name; };

  auto cat = std::make_shared<FinCat>();
  for (const auto& ctx : out.contexts) cat->add_object(context_name(sig, ctx));
  cat->set_terminal(0);
  for (Index a = 0; a < num_ctx; ++a)
    for (Index b = 0; b < num_ctx; ++b) {
      const auto& cod = out.contexts[b];
      std::vector<std::vector<int>> choice;
      std::size_t count = 1;
      for (int s : cod) {
        choice.push_back(terms(a, s));
        count *= choice.back().size();
      }
      index->hom_offset[{a, b}] = static_cast<Index>(cat->num_morphisms());
      for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<int> sigma(cod.size());
        std::size_t rest = idx;
        for (std::size_t k = cod.size(); k-- > 0;) {
          sigma[k] = choice[k][rest % choice[k].size()];
          rest /= choice[k].size();
        }
        std::string name = cat->object_name(a) + "->" + cat->object_name(b) + ":[";
        for (std::size_t k = 0; k < sigma.size(); ++k) name += (k ? "," : "") + term_name(sigma[k]);
        name += "]";
        bool is_id = a == b;
        for (std::size_t k = 0; is_id && k < sigma.size(); ++k) is_id = sigma[k] == static_cast<int>(k);
        if (is_id) cat->add_identity(a, name);
        else cat->add_morphism(name, a, b);
        index->subs.push_back(std::move(sigma));
        index->dom.push_back(a);
        index->cod.push_back(b);
      }
    }
  out.substitutions = index->subs;
  cat->set_composer([index](Index g, Index f) -> Index {
    if (index->cod[f] != index->dom[g]) return kNone;
    const auto& sf = index->subs[f];
    std::vector<int> s;
    for (int t : index->subs[g]) s.push_back(t >= 0 ? sf[t] : t);
    return index->arrow(index->dom[f], index->cod[g], s);
  });
  auto arrow_of = [&](Index a, Index b, const std::vector<int>& sigma) { return index->arrow(a, b, sigma); };
  for (Index a = 0; a < num_ctx; ++a)
    for (Index b = 0; b < num_ctx; ++b) {
      auto w = out.contexts[a];
      const auto& v = out.contexts[b];
      if (w.size() + v.size() > ctx_bound) continue;
      std::size_t na = w.size();
      w.insert(w.end(), v.begin(), v.end());
      Index ab = ctx_index.at(w);
      std::vector<int> first(na), second(v.size());
      std::iota(first.begin(), first.end(), 0);
      std::iota(second.begin(), second.end(), static_cast<int>(na));
      cat->set_product(a, b, {ab, arrow_of(ab, a, first), arrow_of(ab, b, second)});
    }

  // Fiber elements: distinct cores of queries with at most size_bound bound
  // variables and size_bound atoms.
  auto doctrine = std::make_shared<Doctrine>();
  doctrine->name = "syntactic";
  std::vector<std::unordered_map<std::string, Index>> lookup(num_ctx);
  std::size_t candidates = 0;
  for (Index c = 0; c < num_ctx; ++c) {
    const auto& ctx = out.contexts[c];
    std::vector<int> item_sorts = ctx;
    for (const auto& k : sig.constants) item_sorts.push_back(k.sort);
    std::vector<std::vector<int>> partitions;
    std::vector<int> cur, block_sort;
    rigid_partitions(item_sorts, cur, block_sort, partitions);
    std::map<std::string, CanonicalQuery> found;
    for (const auto& part : partitions) {
      CanonicalQuery base;
      base.context = ctx;
      base.rigid_node = part;
      base.num_rigid = part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
      base.node_sort.assign(base.num_rigid, 0);
      for (std::size_t i = 0; i < part.size(); ++i) base.node_sort[part[i]] = item_sorts[i];
      for (int n = 0; n < base.num_rigid; ++n) {
        std::size_t item = std::find(part.begin(), part.end(), n) - part.begin();
        base.node_name.push_back(item < ctx.size() ? "x" + std::to_string(item + 1)
                                                   : sig.constants[item - ctx.size()].name);
      }
      std::vector<int> owner(base.num_rigid, -1);
      for (std::size_t i = ctx.size(); i < part.size(); ++i) {
        if (owner[part[i]] >= 0) base.merges_constants = true;
        owner[part[i]] = static_cast<int>(i);
      }
      for (std::size_t k = 0; k <= size_bound; ++k) {
        std::vector<std::vector<int>> multisets;
        std::vector<int> ms;
        sort_multisets(num_sorts, k, 0, ms, multisets);
        for (const auto& bound : multisets) {
          CanonicalQuery q = base;
          for (std::size_t j = 0; j < bound.size(); ++j) {
            q.node_sort.push_back(bound[j]);
            q.node_name.push_back("y" + std::to_string(j + 1));
          }
          std::vector<CanonicalQuery::Atom> universe;
          for (std::size_t r = 0; r < sig.relations.size(); ++r) {
            std::vector<int> tup;
            all_tuples(q.node_sort, sig.relations[r].arity, tup, static_cast<int>(r), universe);
          }
          std::sort(universe.begin(), universe.end());
          // Atom subsets of size at most size_bound, as increasing index lists.
          std::vector<std::size_t> pick;
          std::function<void(std::size_t)> choose = [&](std::size_t from) {
            if (++candidates > kCandidateBudget)
              throw Error(ErrorCode::kFiberTooLarge, "syntactic fiber enumeration exceeds the candidate budget");
            CanonicalQuery cand = q;
            for (auto i : pick) cand.atoms.push_back(universe[i]);
            CanonicalQuery cq = core(cand);
            found.emplace(query_key(cq), std::move(cq));
            if (pick.size() == size_bound) return;
            for (std::size_t i = from; i < universe.size(); ++i) {
              pick.push_back(i);
              choose(i + 1);
              pick.pop_back();
            }
          };
          choose(0);
        }
      }
    }
    std::vector<CanonicalQuery> elems;
    for (auto& [key, q] : found) elems.push_back(std::move(q));
    std::stable_sort(elems.begin(), elems.end(), [](const CanonicalQuery& a, const CanonicalQuery& b) {
      return std::make_pair(a.num_bound(), a.atoms.size()) < std::make_pair(b.num_bound(), b.atoms.size());
    });
    for (std::size_t i = 0; i < elems.size(); ++i) lookup[c][query_key(elems[i])] = static_cast<Index>(i);
    out.elements.push_back(std::move(elems));
  }

  auto find = [&](Index c, const CanonicalQuery& q) {
    auto it = lookup[c].find(query_key(q));
    return it == lookup[c].end() ? kNone : it->second;
  };
  for (Index c = 0; c < num_ctx; ++c) {
    const auto& elems = out.elements[c];
    std::size_t n = elems.size();
    Context named;
    for (std::size_t i = 0; i < out.contexts[c].size(); ++i)
      named.emplace_back("x" + std::to_string(i + 1), out.contexts[c][i]);
    MeetSL f;
    for (const auto& q : elems) f.names.push_back(to_string(sig, named, q));
    f.order.assign(n * n, 0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) f.order[x * n + y] = leq(elems[x], elems[y]) ? 1 : 0;
    f.meets.assign(n * n, kNone);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x; y < n; ++y) {
        Index m;
        if (f.order[x * n + y]) m = static_cast<Index>(x);
        else if (f.order[y * n + x]) m = static_cast<Index>(y);
        else m = find(c, meet(elems[x], elems[y]));
        f.meets[x * n + y] = f.meets[y * n + x] = m;
      }
    f.top = find(c, top(out.contexts[c]));
    doctrine->fibers.push_back(std::move(f));
  }
  doctrine->reindex.resize(cat->num_morphisms());
  for (Index a = 0; a < static_cast<Index>(cat->num_morphisms()); ++a) {
    Index d = cat->dom(a), c = cat->cod(a);
    auto& row = doctrine->reindex[a];
    if (cat->is_identity(a)) {
      row.resize(out.elements[c].size());
      std::iota(row.begin(), row.end(), 0);
      continue;
    }
    for (const auto& q : out.elements[c]) row.push_back(find(d, reindex(out.contexts[d], out.substitutions[a], q)));
  }
  for (const auto& [key, p] : cat->products()) {
    Index a = static_cast<Index>(key >> 32);
    std::size_t na = out.contexts[a].size();
    std::size_t nab = out.contexts[p.object].size();
    std::vector<int> keep_first(na), keep_second(nab - na);
    std::iota(keep_first.begin(), keep_first.end(), 0);
    std::iota(keep_second.begin(), keep_second.end(), static_cast<int>(na));
    for (auto [proj, keep] : {std::make_pair(p.first, keep_first), std::make_pair(p.second, keep_second)}) {
      if (doctrine->exists.count(proj)) continue;
      Index target = cat->cod(proj);
      std::vector<Index> row;
      for (const auto& q : out.elements[p.object]) row.push_back(find(target, exists(q, keep)));
      doctrine->exists[proj] = std::move(row);
    }
  }
  doctrine->existential = true;
  for (Index c = 0; c < num_ctx; ++c) {
    const auto* p = cat->product(c, c);
    doctrine->delta.push_back(p ? find(p->object, delta(out.contexts[c])) : kNone);
  }
  out.horn.elements.resize(num_ctx);
  for (Index c = 0; c < num_ctx; ++c)
    for (std::size_t i = 0; i < out.elements[c].size(); ++i)
      if (out.elements[c][i].num_bound() == 0) out.horn.elements[c].push_back(static_cast<Index>(i));
  doctrine->base = std::move(cat);
  out.doctrine = std::move(doctrine);
  return out;
}

}  // namespace doctrina
