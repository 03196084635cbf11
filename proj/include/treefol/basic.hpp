#ifndef TREEFOL_BASIC_HPP
#define TREEFOL_BASIC_HPP

#include <algorithm>
#include <cassert>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "treefol/formula.hpp"
#include "treefol/symbols.hpp"

namespace treefol {

// Flat atoms: true, x=y, x=f(x1,...,xn), finite(x).
struct TrueAtom {};
struct EqVar {
  Variable lhs, rhs;
};
struct EqApp {
  Variable lhs;
  FunctionSymbol sym;
  std::vector<Variable> args;
};
struct FiniteAtom {
  Variable var;
};
using FlatAtom = std::variant<TrueAtom, EqVar, EqApp, FiniteAtom>;

inline bool is_true_atom(const FlatAtom& a) { return std::holds_alternative<TrueAtom>(a); }
inline bool is_eq(const FlatAtom& a) {
  return std::holds_alternative<EqVar>(a) || std::holds_alternative<EqApp>(a);
}
inline bool is_finite_atom(const FlatAtom& a) { return std::holds_alternative<FiniteAtom>(a); }

inline const Variable* eq_lhs(const FlatAtom& a) {
  if (const EqVar* e = std::get_if<EqVar>(&a)) return &e->lhs;
  if (const EqApp* e = std::get_if<EqApp>(&a)) return &e->lhs;
  return nullptr;
}

// Variables on the right-hand side of an equation (empty for non-equations).
inline std::vector<Variable> eq_rhs_vars(const FlatAtom& a) {
  if (const EqVar* e = std::get_if<EqVar>(&a)) return {e->rhs};
  if (const EqApp* e = std::get_if<EqApp>(&a)) return e->args;
  return {};
}

inline void atom_vars(const FlatAtom& a, VarSet& out) {
  if (const EqVar* e = std::get_if<EqVar>(&a)) {
    out.insert(e->lhs);
    out.insert(e->rhs);
  } else if (const EqApp* e = std::get_if<EqApp>(&a)) {
    out.insert(e->lhs);
    for (const Variable& v : e->args) out.insert(v);
  } else if (const FiniteAtom* e = std::get_if<FiniteAtom>(&a)) {
    out.insert(e->var);
  }
}

// Total order on atoms: kind, then lhs key, then rhs shape. Used for the
// canonical printing order and for set-style comparisons.
inline int atom_kind_rank(const FlatAtom& a) { return static_cast<int>(a.index()); }

inline bool atom_less(const FlatAtom& a, const FlatAtom& b) {
  if (atom_kind_rank(a) != atom_kind_rank(b)) return atom_kind_rank(a) < atom_kind_rank(b);
  if (const EqVar* x = std::get_if<EqVar>(&a)) {
    const EqVar& y = std::get<EqVar>(b);
    if (x->lhs != y.lhs) return x->lhs < y.lhs;
    return x->rhs < y.rhs;
  }
  if (const EqApp* x = std::get_if<EqApp>(&a)) {
    const EqApp& y = std::get<EqApp>(b);
    if (x->lhs != y.lhs) return x->lhs < y.lhs;
    if (x->sym != y.sym) return x->sym < y.sym;
    return std::lexicographical_compare(x->args.begin(), x->args.end(), y.args.begin(),
                                        y.args.end());
  }
  if (const FiniteAtom* x = std::get_if<FiniteAtom>(&a)) {
    const FiniteAtom& y = std::get<FiniteAtom>(b);
    return x->var < y.var;
  }
  return false;  // TrueAtom
}

inline bool atom_equal(const FlatAtom& a, const FlatAtom& b) {
  return !atom_less(a, b) && !atom_less(b, a);
}

// A basic formula is a multiset of flat atoms; the empty multiset is true.
struct BasicFormula {
  std::vector<FlatAtom> atoms;

  BasicFormula() = default;
  explicit BasicFormula(std::vector<FlatAtom> as) : atoms(std::move(as)) {}

  bool is_true() const {
    return std::all_of(atoms.begin(), atoms.end(), is_true_atom);
  }

  std::vector<FlatAtom> equations() const {
    std::vector<FlatAtom> out;
    for (const FlatAtom& a : atoms)
      if (is_eq(a)) out.push_back(a);
    return out;
  }
  std::vector<FlatAtom> finites() const {
    std::vector<FlatAtom> out;
    for (const FlatAtom& a : atoms)
      if (is_finite_atom(a)) out.push_back(a);
    return out;
  }

  VarSet vars() const {
    VarSet out;
    for (const FlatAtom& a : atoms) atom_vars(a, out);
    return out;
  }

  bool contains(const FlatAtom& a) const {
    return std::any_of(atoms.begin(), atoms.end(),
                       [&](const FlatAtom& b) { return atom_equal(a, b); });
  }

  std::vector<FlatAtom> sorted_dedup() const {
    std::vector<FlatAtom> s;
    for (const FlatAtom& a : atoms)
      if (!is_true_atom(a)) s.push_back(a);
    std::sort(s.begin(), s.end(), atom_less);
    s.erase(std::unique(s.begin(), s.end(), atom_equal), s.end());
    return s;
  }
};

inline Formula atom_to_formula(const FlatAtom& a) {
  if (std::holds_alternative<TrueAtom>(a)) return Formula::tru();
  if (const EqVar* e = std::get_if<EqVar>(&a)) return Formula::eq(Term(e->lhs), Term(e->rhs));
  if (const EqApp* e = std::get_if<EqApp>(&a)) {
    std::vector<Term> args;
    args.reserve(e->args.size());
    for (const Variable& v : e->args) args.emplace_back(v);
    return Formula::eq(Term(e->lhs), Term(e->sym, std::move(args)));
  }
  const FiniteAtom& f = std::get<FiniteAtom>(a);
  return Formula::finite(Term(f.var));
}

// Set equality of the atom sets (true atoms and duplicates ignored).
inline bool basic_set_equal(const BasicFormula& a, const BasicFormula& b) {
  auto sa = a.sorted_dedup();
  auto sb = b.sorted_dedup();
  if (sa.size() != sb.size()) return false;
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (!atom_equal(sa[i], sb[i])) return false;
  return true;
}

// Is every atom of `sub` present in `sup` (as sets)?
inline bool basic_set_subset(const std::vector<FlatAtom>& sub, const BasicFormula& sup) {
  for (const FlatAtom& a : sub) {
    if (is_true_atom(a)) continue;
    if (!sup.contains(a)) return false;
  }
  return true;
}

// Lhs(b): variables occurring as left-hand sides of equations.
inline VarSet lhs_set(const BasicFormula& b) {
  VarSet out;
  for (const FlatAtom& a : b.atoms)
    if (const Variable* l = eq_lhs(a)) out.insert(*l);
  return out;
}

// FINI(b): variables under finite(.).
inline VarSet fini_set(const BasicFormula& b) {
  VarSet out;
  for (const FlatAtom& a : b.atoms)
    if (const FiniteAtom* f = std::get_if<FiniteAtom>(&a)) out.insert(f->var);
  return out;
}

enum class SolvednessViolation {
  DuplicateLhs,
  MisorderedVarEq,
  LhsInFini,
  DuplicateFinite,
};

struct SolvednessReport {
  bool solved = true;
  std::vector<std::pair<SolvednessViolation, Variable>> violations;

  void add(SolvednessViolation kind, const Variable& v) {
    solved = false;
    violations.emplace_back(kind, v);
  }
};

// Solved: lhs variables and finite-variables pairwise distinct, every x=y
// has x ≻ y, and no lhs variable carries finite.
inline SolvednessReport check_solved(const BasicFormula& b) {
  SolvednessReport rep;
  VarSet lhs_seen, fini_seen;
  for (const FlatAtom& a : b.atoms) {
    if (const EqVar* e = std::get_if<EqVar>(&a)) {
      if (!order_gt(e->lhs, e->rhs)) rep.add(SolvednessViolation::MisorderedVarEq, e->lhs);
      if (!lhs_seen.insert(e->lhs).second) rep.add(SolvednessViolation::DuplicateLhs, e->lhs);
    } else if (const EqApp* e = std::get_if<EqApp>(&a)) {
      if (!lhs_seen.insert(e->lhs).second) rep.add(SolvednessViolation::DuplicateLhs, e->lhs);
    } else if (const FiniteAtom* f = std::get_if<FiniteAtom>(&a)) {
      if (!fini_seen.insert(f->var).second) rep.add(SolvednessViolation::DuplicateFinite, f->var);
    }
  }
  for (const Variable& v : lhs_seen)
    if (fini_seen.count(v)) rep.add(SolvednessViolation::LhsInFini, v);
  return rep;
}

struct Reachability {
  VarSet vars;                    // least fixpoint including the seeds
  std::vector<FlatAtom> eqs;      // equations whose lhs is reachable
  std::vector<FlatAtom> finis;    // finite(u) with u reachable
};

// Reachable variables/equations of b from `seeds`, per the fixpoint
//   vars = seeds ∪ { vars(t) : x=t ∈ b, x ∈ vars }.
// finite(u) counts as reachable when u ∈ vars; a caller analysing
// ∃x̄ b passes seeds = vars(b) \ x̄ so that unquantified finite atoms are
// automatically reachable.
inline Reachability reachable(const BasicFormula& b, const VarSet& seeds) {
  Reachability r;
  r.vars = seeds;
  std::vector<bool> used(b.atoms.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < b.atoms.size(); ++i) {
      if (used[i] || !is_eq(b.atoms[i])) continue;
      const Variable* l = eq_lhs(b.atoms[i]);
      if (!r.vars.count(*l)) continue;
      used[i] = true;
      changed = true;
      for (const Variable& v : eq_rhs_vars(b.atoms[i]))
        if (r.vars.insert(v).second) {
          // new variable may unlock earlier equations; the loop re-scans
        }
    }
  }
  for (std::size_t i = 0; i < b.atoms.size(); ++i)
    if (used[i]) r.eqs.push_back(b.atoms[i]);
  for (const FlatAtom& a : b.atoms)
    if (const FiniteAtom* f = std::get_if<FiniteAtom>(&a))
      if (r.vars.count(f->var)) r.finis.push_back(a);
  return r;
}

// Is u reachable from itself in b (occurs-check core of rules (9)/(10))?
inline bool self_reachable(const Variable& u, const BasicFormula& b) {
  VarSet frontier{u};
  std::vector<bool> used(b.atoms.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < b.atoms.size(); ++i) {
      if (used[i] || !is_eq(b.atoms[i])) continue;
      const Variable* l = eq_lhs(b.atoms[i]);
      if (!frontier.count(*l)) continue;
      used[i] = true;
      changed = true;
      for (const Variable& v : eq_rhs_vars(b.atoms[i])) {
        if (v == u) return true;
        frontier.insert(v);
      }
    }
  }
  return false;
}

}  // namespace treefol

#endif
