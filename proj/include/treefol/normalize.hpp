#ifndef TREEFOL_NORMALIZE_HPP
#define TREEFOL_NORMALIZE_HPP

#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "treefol/basic.hpp"
#include "treefol/discipline.hpp"
#include "treefol/formula.hpp"

namespace treefol {

// Normalized formula: ¬(∃quant basic ∧ ⋀ children), children normalized.
struct NormalizedFormula {
  std::vector<Variable> quant;
  BasicFormula basic;
  std::vector<NormalizedFormula> children;

  int depth() const {
    int d = 0;
    for (const NormalizedFormula& c : children) d = std::max(d, c.depth());
    return 1 + d;
  }
};

inline Formula to_formula(const NormalizedFormula& n) {
  std::vector<Formula> parts;
  for (const FlatAtom& a : n.basic.atoms) parts.push_back(atom_to_formula(a));
  for (const NormalizedFormula& c : n.children) parts.push_back(to_formula(c));
  Formula body = Formula::conj_all(parts);
  if (!n.quant.empty()) body = Formula::exists(n.quant, std::move(body));
  return Formula::negate(std::move(body));
}

namespace detail {

struct FlattenState {
  Renamer ren;

  // Returns a variable denoting t, emitting the defining flat equations.
  Variable to_var(const Term& t, std::vector<Formula>& atoms, std::vector<Variable>& fresh) {
    if (t.is_var()) return t.var();
    Term flat = flat_app(t, atoms, fresh);
    Variable u = ren.fresh(Variable(OrderKey(0), "u"));
    fresh.push_back(u);
    atoms.push_back(Formula::eq(Term(u), std::move(flat)));
    return u;
  }

  // f(t1..tn) with every argument made a variable.
  Term flat_app(const Term& t, std::vector<Formula>& atoms, std::vector<Variable>& fresh) {
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.emplace_back(to_var(a, atoms, fresh));
    return Term(t.sym(), std::move(args));
  }

  Formula wrap(std::vector<Formula> atoms, std::vector<Variable> fresh) {
    Formula body = Formula::conj_all(atoms);
    if (fresh.empty()) return body;
    return Formula::exists(std::move(fresh), std::move(body));
  }

  Formula flatten(const Formula& f) {
    switch (f.kind()) {
      case FKind::True:
      case FKind::False:
        return f;
      case FKind::Eq: {
        const Term& s = f.lhs();
        const Term& t = f.rhs();
        std::vector<Formula> atoms;
        std::vector<Variable> fresh;
        if (s.is_var() && t.is_var()) return f;
        if (s.is_var() && t.is_app()) {
          Term flat = flat_app(t, atoms, fresh);
          atoms.insert(atoms.begin(), Formula::eq(s, std::move(flat)));
        } else if (s.is_app() && t.is_var()) {
          Term flat = flat_app(s, atoms, fresh);
          atoms.insert(atoms.begin(), Formula::eq(t, std::move(flat)));
        } else {
          Variable u = ren.fresh(Variable(OrderKey(0), "u"));
          Term fs = flat_app(s, atoms, fresh);
          Term ft = flat_app(t, atoms, fresh);
          std::vector<Formula> out;
          out.push_back(Formula::eq(Term(u), std::move(fs)));
          out.push_back(Formula::eq(Term(u), std::move(ft)));
          out.insert(out.end(), atoms.begin(), atoms.end());
          atoms = std::move(out);
          fresh.insert(fresh.begin(), u);
        }
        return wrap(std::move(atoms), std::move(fresh));
      }
      case FKind::Finite: {
        if (f.finite_arg().is_var()) return f;
        std::vector<Formula> atoms;
        std::vector<Variable> fresh;
        Variable u = to_var(f.finite_arg(), atoms, fresh);
        atoms.push_back(Formula::finite(Term(u)));
        return wrap(std::move(atoms), std::move(fresh));
      }
      case FKind::Not:
        return Formula::negate(flatten(f.child()));
      case FKind::And:
        return Formula::conj(flatten(f.child(0)), flatten(f.child(1)));
      case FKind::Or:
        return Formula::disj(flatten(f.child(0)), flatten(f.child(1)));
      case FKind::Implies:
        return Formula::implies(flatten(f.child(0)), flatten(f.child(1)));
      case FKind::Iff:
        return Formula::iff(flatten(f.child(0)), flatten(f.child(1)));
      case FKind::Exists:
      case FKind::Forall: {
        Formula body = flatten(f.child());
        return f.kind() == FKind::Exists ? Formula::exists(f.quant(), std::move(body))
                                         : Formula::forall(f.quant(), std::move(body));
      }
    }
    return f;
  }
};

}  // namespace detail

// Step 1: all equations become flat (x=y or x=f(x1..xn)), finite gets a
// variable argument; new variables are existentially quantified where the
// atom stood, with keys above every key of the input.
inline Formula flatten(const Formula& f) {
  detail::FlattenState st;
  OrderKey top(0);
  detail::collect_keys(f, top);
  st.ren.next = OrderKey::int_above(top);
  return st.flatten(f);
}

// Step 2: false ⇒ ¬true, and only ¬, ∧, ∃ (plus atoms) remain.
inline Formula to_core_connectives(const Formula& f) {
  switch (f.kind()) {
    case FKind::True:
    case FKind::Eq:
    case FKind::Finite:
      return f;
    case FKind::False:
      return Formula::negate(Formula::tru());
    case FKind::Not:
      return Formula::negate(to_core_connectives(f.child()));
    case FKind::And:
      return Formula::conj(to_core_connectives(f.child(0)), to_core_connectives(f.child(1)));
    case FKind::Or:  // a ∨ b ⇒ ¬(¬a ∧ ¬b)
      return Formula::negate(Formula::conj(Formula::negate(to_core_connectives(f.child(0))),
                                           Formula::negate(to_core_connectives(f.child(1)))));
    case FKind::Implies:  // a → b ⇒ ¬(a ∧ ¬b)
      return Formula::negate(
          Formula::conj(to_core_connectives(f.child(0)),
                        Formula::negate(to_core_connectives(f.child(1)))));
    case FKind::Iff: {  // a ↔ b ⇒ ¬(a ∧ ¬b) ∧ ¬(b ∧ ¬a)
      Formula a = to_core_connectives(f.child(0));
      Formula b = to_core_connectives(f.child(1));
      return Formula::conj(Formula::negate(Formula::conj(a, Formula::negate(b))),
                           Formula::negate(Formula::conj(b, Formula::negate(a))));
    }
    case FKind::Exists:
      return Formula::exists(f.quant(), to_core_connectives(f.child()));
    case FKind::Forall:  // ∀x φ ⇒ ¬(∃x ¬φ)
      return Formula::negate(
          Formula::exists(f.quant(), Formula::negate(to_core_connectives(f.child()))));
  }
  return f;
}

namespace detail {

// Steps 5 and 6: lift ∃ over ∧ and group nested ∃ into one vector.
// Sound only after the discipline renaming of step 4.
inline Formula lift_and_group(const Formula& f) {
  switch (f.kind()) {
    case FKind::Not:
      return Formula::negate(lift_and_group(f.child()));
    case FKind::And: {
      Formula a = lift_and_group(f.child(0));
      Formula b = lift_and_group(f.child(1));
      std::vector<Variable> vars;
      while (a.kind() == FKind::Exists) {
        vars.insert(vars.end(), a.quant().begin(), a.quant().end());
        a = a.child();
      }
      while (b.kind() == FKind::Exists) {
        vars.insert(vars.end(), b.quant().begin(), b.quant().end());
        b = b.child();
      }
      Formula core = Formula::conj(std::move(a), std::move(b));
      if (vars.empty()) return core;
      return Formula::exists(std::move(vars), std::move(core));
    }
    case FKind::Exists: {
      Formula body = lift_and_group(f.child());
      std::vector<Variable> vars = f.quant();
      while (body.kind() == FKind::Exists) {
        vars.insert(vars.end(), body.quant().begin(), body.quant().end());
        body = body.child();
      }
      return Formula::exists(std::move(vars), std::move(body));
    }
    default:
      return f;
  }
}

inline void split_conjunction(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == FKind::And) {
    split_conjunction(f.child(0), out);
    split_conjunction(f.child(1), out);
  } else {
    out.push_back(f);
  }
}

inline FlatAtom formula_to_atom(const Formula& f) {
  if (f.kind() == FKind::True) return TrueAtom{};
  if (f.kind() == FKind::Finite) {
    if (!f.finite_arg().is_var()) throw std::logic_error("normalize: non-flat finite atom");
    return FiniteAtom{f.finite_arg().var()};
  }
  if (f.kind() == FKind::Eq) {
    if (!f.lhs().is_var()) throw std::logic_error("normalize: non-flat equation");
    if (f.rhs().is_var()) return EqVar{f.lhs().var(), f.rhs().var()};
    std::vector<Variable> args;
    for (const Term& t : f.rhs().args()) {
      if (!t.is_var()) throw std::logic_error("normalize: non-flat equation argument");
      args.push_back(t.var());
    }
    return EqApp{f.lhs().var(), f.rhs().sym(), std::move(args)};
  }
  throw std::logic_error("normalize: unexpected atom");
}

// Step 7: impose the ¬(∃x̄ α ∧ ⋀ ¬(...)) shape, inserting ∃ε and true
// where the conjunction lacks a quantifier or atoms.
inline NormalizedFormula shape(const Formula& f) {
  if (f.kind() != FKind::Not) throw std::logic_error("normalize: expected negation");
  Formula body = f.child();
  NormalizedFormula node;
  while (body.kind() == FKind::Exists) {
    node.quant.insert(node.quant.end(), body.quant().begin(), body.quant().end());
    body = body.child();
  }
  std::vector<Formula> parts;
  split_conjunction(body, parts);
  for (const Formula& p : parts) {
    if (p.kind() == FKind::Not) {
      node.children.push_back(shape(p));
    } else {
      FlatAtom a = formula_to_atom(p);
      if (!is_true_atom(a)) node.basic.atoms.push_back(std::move(a));
    }
  }
  return node;
}

}  // namespace detail

// Steps 1–8: any formula to an equivalent wnfv normalized formula.
inline NormalizedFormula normalize(const Formula& f) {
  Formula g = flatten(f);                       // 1
  g = to_core_connectives(g);                   // 2
  if (g.kind() != FKind::Not)                   // 3
    g = Formula::negate(Formula::conj(Formula::tru(), Formula::negate(g)));
  g = apply_discipline(g);                      // 4
  g = detail::lift_and_group(g);                // 5, 6
  NormalizedFormula n = detail::shape(g);       // 7
  Formula back = to_formula(n);                 // 8
  back = apply_discipline(back);
  return detail::shape(back);
}

}  // namespace treefol

#endif
