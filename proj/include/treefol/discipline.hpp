#ifndef TREEFOL_DISCIPLINE_HPP
#define TREEFOL_DISCIPLINE_HPP

#include <map>
#include <utility>
#include <vector>

#include "treefol/formula.hpp"

namespace treefol {

namespace detail {

inline void collect_keys(const Formula& f, OrderKey& top) {
  auto bump = [&](const Variable& v) {
    if (v.key() > top) top = v.key();
  };
  switch (f.kind()) {
    case FKind::Eq: {
      VarSet vs;
      collect_vars(f.lhs(), vs);
      collect_vars(f.rhs(), vs);
      for (const Variable& v : vs) bump(v);
      return;
    }
    case FKind::Finite: {
      VarSet vs;
      collect_vars(f.finite_arg(), vs);
      for (const Variable& v : vs) bump(v);
      return;
    }
    case FKind::Not:
      collect_keys(f.child(), top);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      collect_keys(f.child(0), top);
      collect_keys(f.child(1), top);
      return;
    case FKind::Exists:
    case FKind::Forall:
      for (const Variable& v : f.quant()) bump(v);
      collect_keys(f.child(), top);
      return;
    default:
      return;
  }
}

struct Renamer {
  OrderKey next;
  unsigned long n = 0;
  Variable fresh(const Variable& like) {
    OrderKey k = next;
    next = OrderKey::int_above(next);
    ++n;
    return Variable(k, like.name());
  }
};

// Condition (i): quantified variables pairwise distinct and distinct from
// the free variables. Only offending binders are renamed.
inline Formula distinct_binders(const Formula& f, VarSet& used, Renamer& ren) {
  switch (f.kind()) {
    case FKind::Exists:
    case FKind::Forall: {
      std::vector<Variable> q;
      std::map<Variable, Variable> sub;
      for (const Variable& v : f.quant()) {
        if (used.count(v)) {
          Variable nv = ren.fresh(v);
          used.insert(nv);
          sub[v] = nv;
          q.push_back(nv);
        } else {
          used.insert(v);
          q.push_back(v);
        }
      }
      Formula body = sub.empty() ? f.child() : substitute(f.child(), sub);
      body = distinct_binders(body, used, ren);
      return f.kind() == FKind::Exists ? Formula::exists(std::move(q), std::move(body))
                                       : Formula::forall(std::move(q), std::move(body));
    }
    case FKind::Not:
      return Formula::negate(distinct_binders(f.child(), used, ren));
    case FKind::And:
      return Formula::conj(distinct_binders(f.child(0), used, ren),
                           distinct_binders(f.child(1), used, ren));
    case FKind::Or:
      return Formula::disj(distinct_binders(f.child(0), used, ren),
                           distinct_binders(f.child(1), used, ren));
    case FKind::Implies:
      return Formula::implies(distinct_binders(f.child(0), used, ren),
                              distinct_binders(f.child(1), used, ren));
    case FKind::Iff:
      return Formula::iff(distinct_binders(f.child(0), used, ren),
                          distinct_binders(f.child(1), used, ren));
    default:
      return f;
  }
}

// Condition (ii): every variable bound in a sub-formula is ≻-above every
// variable free in that sub-formula. `above` accumulates, along the path
// from the root, the union of the free-variable sets of all enclosing
// sub-formulas; a binder must then dominate it.
inline Formula raise_binders(const Formula& f, VarSet above, Renamer& ren) {
  for (const Variable& v : free_vars(f)) above.insert(v);
  switch (f.kind()) {
    case FKind::Exists:
    case FKind::Forall: {
      std::vector<Variable> q;
      std::map<Variable, Variable> sub;
      for (const Variable& v : f.quant()) {
        bool ok = true;
        for (const Variable& y : above)
          if (!order_gt(v, y)) {
            ok = false;
            break;
          }
        if (ok) {
          q.push_back(v);
        } else {
          Variable nv = ren.fresh(v);
          sub[v] = nv;
          q.push_back(nv);
        }
      }
      Formula body = sub.empty() ? f.child() : substitute(f.child(), sub);
      body = raise_binders(body, std::move(above), ren);
      return f.kind() == FKind::Exists ? Formula::exists(std::move(q), std::move(body))
                                       : Formula::forall(std::move(q), std::move(body));
    }
    case FKind::Not:
      return Formula::negate(raise_binders(f.child(), std::move(above), ren));
    case FKind::And:
      return Formula::conj(raise_binders(f.child(0), above, ren),
                           raise_binders(f.child(1), std::move(above), ren));
    case FKind::Or:
      return Formula::disj(raise_binders(f.child(0), above, ren),
                           raise_binders(f.child(1), std::move(above), ren));
    case FKind::Implies:
      return Formula::implies(raise_binders(f.child(0), above, ren),
                              raise_binders(f.child(1), std::move(above), ren));
    case FKind::Iff:
      return Formula::iff(raise_binders(f.child(0), above, ren),
                          raise_binders(f.child(1), std::move(above), ren));
    default:
      return f;
  }
}

}  // namespace detail

// Renames bound variables (only where needed) so that
//   (i)  bound variables are pairwise distinct and distinct from free ones,
//   (ii) in every sub-formula, bound variables are ≻-above the free ones.
// Idempotent; free variables are untouched.
inline Formula apply_discipline(const Formula& f) {
  detail::Renamer ren;
  OrderKey top(0);
  detail::collect_keys(f, top);
  ren.next = OrderKey::int_above(top);
  VarSet used = free_vars(f);
  Formula g = detail::distinct_binders(f, used, ren);
  return detail::raise_binders(g, VarSet{}, ren);
}

// True iff f already satisfies both discipline conditions.
inline bool satisfies_discipline(const Formula& f) { return apply_discipline(f) == f; }

}  // namespace treefol

#endif
