#ifndef TREEFOL_FORMULA_HPP
#define TREEFOL_FORMULA_HPP

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "treefol/term.hpp"

namespace treefol {

enum class FKind {
  True,
  False,
  Eq,
  Finite,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Exists,
  Forall,
};

// Immutable first-order formula with structural sharing. Quantifier
// variable lists are kept duplicate-free.
class Formula {
 public:
  Formula() : Formula(make(FKind::True)) {}

  static Formula tru() { return Formula(make(FKind::True)); }
  static Formula fls() { return Formula(make(FKind::False)); }
  static Formula eq(Term lhs, Term rhs) {
    auto n = make(FKind::Eq);
    n->terms = {std::move(lhs), std::move(rhs)};
    return Formula(std::move(n));
  }
  static Formula finite(Term t) {
    auto n = make(FKind::Finite);
    n->terms = {std::move(t)};
    return Formula(std::move(n));
  }
  static Formula negate(Formula f) {
    auto n = make(FKind::Not);
    n->kids = {std::move(f)};
    return Formula(std::move(n));
  }
  static Formula conj(Formula a, Formula b) { return binary(FKind::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(FKind::Or, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) {
    return binary(FKind::Implies, std::move(a), std::move(b));
  }
  static Formula iff(Formula a, Formula b) { return binary(FKind::Iff, std::move(a), std::move(b)); }
  static Formula exists(std::vector<Variable> vars, Formula body) {
    return quantified(FKind::Exists, std::move(vars), std::move(body));
  }
  static Formula forall(std::vector<Variable> vars, Formula body) {
    return quantified(FKind::Forall, std::move(vars), std::move(body));
  }

  // Conjunction of a (possibly empty) list; empty list is true.
  static Formula conj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return tru();
    Formula acc = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;) acc = conj(fs[i], acc);
    return acc;
  }
  static Formula disj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return fls();
    Formula acc = fs.back();
    for (std::size_t i = fs.size() - 1; i-- > 0;) acc = disj(fs[i], acc);
    return acc;
  }

  FKind kind() const { return n_->kind; }
  const Term& lhs() const { return n_->terms[0]; }
  const Term& rhs() const { return n_->terms[1]; }
  const Term& finite_arg() const { return n_->terms[0]; }
  const Formula& child(std::size_t i = 0) const { return n_->kids[i]; }
  std::size_t child_count() const { return n_->kids.size(); }
  const std::vector<Variable>& quant() const { return n_->quant; }
  bool is_quantifier() const { return kind() == FKind::Exists || kind() == FKind::Forall; }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.n_ == b.n_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.n_->terms != b.n_->terms) return false;
    if (a.n_->quant != b.n_->quant) return false;
    return a.n_->kids == b.n_->kids;
  }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node {
    FKind kind;
    std::vector<Term> terms;      // Eq: lhs,rhs; Finite: arg
    std::vector<Formula> kids;    // Not: 1; And/Or/Implies/Iff: 2; quantifiers: 1
    std::vector<Variable> quant;  // quantifiers only
  };

  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static std::shared_ptr<Node> make(FKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }
  static Formula binary(FKind k, Formula a, Formula b) {
    auto n = make(k);
    n->kids = {std::move(a), std::move(b)};
    return Formula(std::move(n));
  }
  static Formula quantified(FKind k, std::vector<Variable> vars, Formula body) {
    auto n = make(k);
    // keep the vector duplicate-free, preserving first occurrences
    std::vector<Variable> dedup;
    for (const Variable& v : vars)
      if (std::find(dedup.begin(), dedup.end(), v) == dedup.end()) dedup.push_back(v);
    n->quant = std::move(dedup);
    n->kids = {std::move(body)};
    return Formula(std::move(n));
  }

  std::shared_ptr<const Node> n_;
};

namespace detail {
inline void free_vars_rec(const Formula& f, VarSet& bound, VarSet& out) {
  switch (f.kind()) {
    case FKind::True:
    case FKind::False:
      return;
    case FKind::Eq: {
      VarSet vs;
      collect_vars(f.lhs(), vs);
      collect_vars(f.rhs(), vs);
      for (const Variable& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case FKind::Finite: {
      VarSet vs;
      collect_vars(f.finite_arg(), vs);
      for (const Variable& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case FKind::Not:
      free_vars_rec(f.child(), bound, out);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      free_vars_rec(f.child(0), bound, out);
      free_vars_rec(f.child(1), bound, out);
      return;
    case FKind::Exists:
    case FKind::Forall: {
      std::vector<Variable> added;
      for (const Variable& v : f.quant())
        if (bound.insert(v).second) added.push_back(v);
      free_vars_rec(f.child(), bound, out);
      for (const Variable& v : added) bound.erase(v);
      return;
    }
  }
}
}  // namespace detail

inline VarSet free_vars(const Formula& f) {
  VarSet bound, out;
  detail::free_vars_rec(f, bound, out);
  return out;
}

inline std::size_t formula_size(const Formula& f) {
  switch (f.kind()) {
    case FKind::True:
    case FKind::False:
      return 1;
    case FKind::Eq:
      return 1 + term_size(f.lhs()) + term_size(f.rhs());
    case FKind::Finite:
      return 1 + term_size(f.finite_arg());
    case FKind::Not:
      return 1 + formula_size(f.child());
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      return 1 + formula_size(f.child(0)) + formula_size(f.child(1));
    case FKind::Exists:
    case FKind::Forall:
      return 1 + f.quant().size() + formula_size(f.child());
  }
  return 1;
}

// Capture-free substitution of variables by variables (used by renaming).
inline Term substitute(const Term& t, const std::map<Variable, Variable>& sub) {
  if (t.is_var()) {
    auto it = sub.find(t.var());
    return it == sub.end() ? t : Term(it->second);
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(substitute(a, sub));
  return Term(t.sym(), std::move(args));
}

inline Formula substitute(const Formula& f, const std::map<Variable, Variable>& sub) {
  if (sub.empty()) return f;
  switch (f.kind()) {
    case FKind::True:
    case FKind::False:
      return f;
    case FKind::Eq:
      return Formula::eq(substitute(f.lhs(), sub), substitute(f.rhs(), sub));
    case FKind::Finite:
      return Formula::finite(substitute(f.finite_arg(), sub));
    case FKind::Not:
      return Formula::negate(substitute(f.child(), sub));
    case FKind::And:
      return Formula::conj(substitute(f.child(0), sub), substitute(f.child(1), sub));
    case FKind::Or:
      return Formula::disj(substitute(f.child(0), sub), substitute(f.child(1), sub));
    case FKind::Implies:
      return Formula::implies(substitute(f.child(0), sub), substitute(f.child(1), sub));
    case FKind::Iff:
      return Formula::iff(substitute(f.child(0), sub), substitute(f.child(1), sub));
    case FKind::Exists:
    case FKind::Forall: {
      // binders shadow outer substitutions
      std::map<Variable, Variable> inner = sub;
      for (const Variable& v : f.quant()) inner.erase(v);
      std::vector<Variable> q = f.quant();
      Formula body = substitute(f.child(), inner);
      return f.kind() == FKind::Exists ? Formula::exists(std::move(q), std::move(body))
                                       : Formula::forall(std::move(q), std::move(body));
    }
  }
  return f;
}

// Renames *binders* too: `sub` maps the quantified variable itself.
inline Formula rename_all(const Formula& f, const std::map<Variable, Variable>& sub) {
  switch (f.kind()) {
    case FKind::Exists:
    case FKind::Forall: {
      std::vector<Variable> q;
      q.reserve(f.quant().size());
      for (const Variable& v : f.quant()) {
        auto it = sub.find(v);
        q.push_back(it == sub.end() ? v : it->second);
      }
      Formula body = rename_all(f.child(), sub);
      return f.kind() == FKind::Exists ? Formula::exists(std::move(q), std::move(body))
                                       : Formula::forall(std::move(q), std::move(body));
    }
    case FKind::Not:
      return Formula::negate(rename_all(f.child(), sub));
    case FKind::And:
      return Formula::conj(rename_all(f.child(0), sub), rename_all(f.child(1), sub));
    case FKind::Or:
      return Formula::disj(rename_all(f.child(0), sub), rename_all(f.child(1), sub));
    case FKind::Implies:
      return Formula::implies(rename_all(f.child(0), sub), rename_all(f.child(1), sub));
    case FKind::Iff:
      return Formula::iff(rename_all(f.child(0), sub), rename_all(f.child(1), sub));
    default:
      return substitute(f, sub);
  }
}

// Structural equality up to variable identity: bound variables correspond
// positionally, free variables by name.
inline bool equal_modulo_keys(const Formula& a, const Formula& b,
                              std::map<Variable, Variable>* bind = nullptr) {
  std::map<Variable, Variable> local;
  if (!bind) bind = &local;
  auto term_eq = [&](const Term& x, const Term& y, auto&& self) -> bool {
    if (x.is_var() != y.is_var()) return false;
    if (x.is_var()) {
      auto it = bind->find(x.var());
      if (it != bind->end()) return it->second == y.var();
      return x.var().name() == y.var().name();
    }
    if (x.sym() != y.sym() || x.args().size() != y.args().size()) return false;
    for (std::size_t i = 0; i < x.args().size(); ++i)
      if (!self(x.args()[i], y.args()[i], self)) return false;
    return true;
  };
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FKind::True:
    case FKind::False:
      return true;
    case FKind::Eq:
      return term_eq(a.lhs(), b.lhs(), term_eq) && term_eq(a.rhs(), b.rhs(), term_eq);
    case FKind::Finite:
      return term_eq(a.finite_arg(), b.finite_arg(), term_eq);
    case FKind::Not:
      return equal_modulo_keys(a.child(), b.child(), bind);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      return equal_modulo_keys(a.child(0), b.child(0), bind) &&
             equal_modulo_keys(a.child(1), b.child(1), bind);
    case FKind::Exists:
    case FKind::Forall: {
      if (a.quant().size() != b.quant().size()) return false;
      std::map<Variable, Variable> saved = *bind;
      for (std::size_t i = 0; i < a.quant().size(); ++i)
        (*bind)[a.quant()[i]] = b.quant()[i];
      bool ok = equal_modulo_keys(a.child(), b.child(), bind);
      *bind = std::move(saved);
      return ok;
    }
  }
  return false;
}

}  // namespace treefol

#endif
