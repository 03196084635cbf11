#ifndef TREEFOL_ORACLE_HPP
#define TREEFOL_ORACLE_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "treefol/basic.hpp"
#include "treefol/rational_tree.hpp"

namespace treefol {

// Ground-truth machinery, independent of the rewriting engine: rational-tree
// unification (no occurs check; cycles are satisfiable), the finiteness
// decision, and entailment between basic formulas. The solver never calls
// into this module; tests cross-validate against it.

struct UnifyResult {
  bool sat = false;
  BasicFormula solved;  // meaningful when sat
};

namespace oracle_detail {

struct Binding {
  FunctionSymbol sym;
  std::vector<Variable> args;
};

// Union-find over variables with one optional constructor binding per
// class. The class representative is the ≻-least variable, which makes
// the solved output independent of atom order.
struct Unifier {
  std::map<Variable, Variable> parent;
  std::map<Variable, Binding> binding;  // keyed by representative

  Variable find(Variable v) {
    auto it = parent.find(v);
    if (it == parent.end() || it->second == v) return v;
    Variable r = find(it->second);
    parent[v] = r;
    return r;
  }

  void touch(const Variable& v) {
    if (!parent.count(v)) parent.emplace(v, v);
  }

  bool merge(Variable a, Variable b) {
    touch(a);
    touch(b);
    std::deque<std::pair<Variable, Variable>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.front();
      work.pop_front();
      Variable rx = find(x), ry = find(y);
      if (rx == ry) continue;
      if (order_gt(rx, ry)) std::swap(rx, ry);  // rx becomes the lesser: keep it
      // merge ry into rx
      parent[ry] = rx;
      auto by = binding.find(ry);
      if (by != binding.end()) {
        Binding moved = by->second;
        binding.erase(by);
        auto bx = binding.find(rx);
        if (bx == binding.end()) {
          binding.emplace(rx, std::move(moved));
        } else {
          if (bx->second.sym != moved.sym) return false;  // conflict of symbols
          for (std::size_t i = 0; i < moved.args.size(); ++i)
            work.emplace_back(bx->second.args[i], moved.args[i]);
        }
      }
    }
    return true;
  }

  bool bind(const Variable& v, const FunctionSymbol& f, const std::vector<Variable>& args) {
    touch(v);
    for (const Variable& a : args) touch(a);
    Variable r = find(v);
    auto it = binding.find(r);
    if (it == binding.end()) {
      binding.emplace(r, Binding{f, args});
      return true;
    }
    if (it->second.sym != f) return false;
    std::vector<Variable> prev = it->second.args;
    for (std::size_t i = 0; i < args.size(); ++i)
      if (!merge(prev[i], args[i])) return false;
    return true;
  }

  bool feed(const BasicFormula& b) {
    for (const FlatAtom& a : b.atoms) {
      if (const EqVar* e = std::get_if<EqVar>(&a)) {
        if (!merge(e->lhs, e->rhs)) return false;
      } else if (const EqApp* e = std::get_if<EqApp>(&a)) {
        if (!bind(e->lhs, e->sym, e->args)) return false;
      }
    }
    return true;
  }

  std::map<Variable, std::vector<Variable>> classes() {
    std::map<Variable, std::vector<Variable>> by_rep;
    for (const auto& [v, _] : parent) by_rep[find(v)].push_back(v);
    return by_rep;
  }

  // Representative-level constructor graph edges.
  std::map<Variable, Binding> rep_bindings() {
    std::map<Variable, Binding> out;
    for (const auto& [v, b] : binding) {
      Binding nb = b;
      for (Variable& a : nb.args) a = find(a);
      out.emplace(find(v), std::move(nb));
    }
    return out;
  }
};

// Representatives lying on a constructor cycle (reachable from themselves
// through at least one binding edge).
inline std::set<Variable> cyclic_reps(const std::map<Variable, Binding>& bindings) {
  std::set<Variable> cyclic;
  for (const auto& [start, _] : bindings) {
    std::set<Variable> seen;
    std::vector<Variable> stack;
    for (const Variable& a : bindings.at(start).args) stack.push_back(a);
    bool found = false;
    while (!stack.empty() && !found) {
      Variable v = stack.back();
      stack.pop_back();
      if (v == start) {
        found = true;
        break;
      }
      if (!seen.insert(v).second) continue;
      auto it = bindings.find(v);
      if (it != bindings.end())
        for (const Variable& a : it->second.args) stack.push_back(a);
    }
    if (found) cyclic.insert(start);
  }
  return cyclic;
}

}  // namespace oracle_detail

// Rational-tree unification of the equations of b. Unsat only on symbol
// clash (axiom of conflict); cycles denote infinite trees and are fine.
inline UnifyResult unify(const BasicFormula& b) {
  oracle_detail::Unifier u;
  if (!u.feed(b)) return UnifyResult{false, {}};
  UnifyResult res;
  res.sat = true;
  auto bindings = u.rep_bindings();
  for (auto& [rep, members] : u.classes()) {
    std::sort(members.begin(), members.end(),
              [](const Variable& a, const Variable& b) { return order_gt(a, b); });
    // members are ≻-descending and end with the representative (the least)
    for (std::size_t i = 0; i + 1 < members.size(); ++i)
      res.solved.atoms.push_back(EqVar{members[i], rep});
    auto it = bindings.find(rep);
    if (it != bindings.end())
      res.solved.atoms.push_back(EqApp{rep, it->second.sym, it->second.args});
  }
  std::sort(res.solved.atoms.begin(), res.solved.atoms.end(), atom_less);
  return res;
}

// Satisfiability of ∃quant b over rational trees with the finite relation.
// The verdict does not depend on which variables are quantified.
inline bool decide_exists(const std::vector<Variable>& quant, const BasicFormula& b) {
  (void)quant;
  oracle_detail::Unifier u;
  if (!u.feed(b)) return false;
  auto bindings = u.rep_bindings();
  std::set<Variable> direct;
  for (const FlatAtom& a : b.atoms)
    if (const FiniteAtom* f = std::get_if<FiniteAtom>(&a)) direct.insert(u.find(f->var));
  // close finiteness downward only: marks must hold on every subtree
  std::set<Variable> fin = direct;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Variable& v : std::vector<Variable>(fin.begin(), fin.end())) {
      auto it = bindings.find(v);
      if (it == bindings.end()) continue;
      for (const Variable& a : it->second.args)
        if (fin.insert(a).second) changed = true;
    }
  }
  std::set<Variable> cyc = oracle_detail::cyclic_reps(bindings);
  for (const Variable& v : fin)
    if (cyc.count(v)) return false;  // a finite tree cannot contain itself
  return true;
}

namespace oracle_detail {

// Partition of the representatives into bisimilarity blocks: two bound
// classes are bisimilar iff same symbol and pointwise bisimilar arguments;
// unbound classes are singletons. By uniqueness of solutions, bisimilar
// classes are forced equal in every model.
struct Bisim {
  std::map<Variable, int> block;

  Bisim(const std::vector<Variable>& reps, const std::map<Variable, Binding>& bindings) {
    int next = 0;
    std::map<Variable, int> cur;
    {
      std::map<std::pair<bool, FunctionSymbol>, int> by_sym;
      for (const Variable& r : reps) {
        auto it = bindings.find(r);
        if (it == bindings.end()) {
          cur[r] = next++;  // unbound: singleton block
        } else {
          auto key = std::make_pair(true, it->second.sym);
          auto [slot, fresh] = by_sym.emplace(key, next);
          if (fresh) ++next;
          cur[r] = slot->second;
        }
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::vector<int>, int> sig_block;
      std::map<Variable, int> refined;
      int n2 = 0;
      for (const Variable& r : reps) {
        std::vector<int> sig{cur[r]};
        auto it = bindings.find(r);
        if (it != bindings.end())
          for (const Variable& a : it->second.args) sig.push_back(cur[a]);
        auto [slot, fresh] = sig_block.emplace(sig, n2);
        if (fresh) ++n2;
        refined[r] = slot->second;
      }
      if (refined != cur) {
        changed = true;
        cur = std::move(refined);
      }
    }
    block = std::move(cur);
  }
};

}  // namespace oracle_detail

// T ⊨ a → a2 for satisfiable basic formulas (vacuously true when the
// equations of a clash). Equations are checked against the bisimilarity
// partition of a's solved graph; finiteness against its closure.
inline bool entail_basic(const BasicFormula& a, const BasicFormula& a2) {
  oracle_detail::Unifier u;
  if (!u.feed(a)) return true;  // a unsatisfiable: entailment vacuous
  auto bindings = u.rep_bindings();

  // representatives of every variable mentioned anywhere
  VarSet all = a.vars();
  for (const Variable& v : a2.vars()) all.insert(v);
  std::vector<Variable> reps;
  {
    std::set<Variable> seen;
    for (const Variable& v : all) {
      u.touch(v);
      Variable r = u.find(v);
      if (seen.insert(r).second) reps.push_back(r);
    }
  }
  oracle_detail::Bisim bisim(reps, bindings);

  // constructor edges lifted to blocks (consistent across members by bisimilarity)
  std::map<int, std::pair<FunctionSymbol, std::vector<int>>> block_binding;
  for (const Variable& r : reps) {
    auto it = bindings.find(r);
    if (it == bindings.end()) continue;
    std::vector<int> argb;
    for (const Variable& a : it->second.args) argb.push_back(bisim.block.at(a));
    block_binding.emplace(bisim.block.at(r), std::make_pair(it->second.sym, std::move(argb)));
  }

  // finiteness closure on the block graph: direct marks, downward through
  // constructors, and upward when all arguments are finite (constants are)
  std::set<int> fin_blocks;
  for (const FlatAtom& atom : a.atoms)
    if (const FiniteAtom* f = std::get_if<FiniteAtom>(&atom))
      fin_blocks.insert(bisim.block.at(u.find(f->var)));
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [b_id, edge] : block_binding) {
      if (fin_blocks.count(b_id)) {
        for (int a_id : edge.second)
          if (fin_blocks.insert(a_id).second) changed = true;
      } else {
        bool all = true;
        for (int a_id : edge.second)
          if (!fin_blocks.count(a_id)) {
            all = false;
            break;
          }
        if (all && fin_blocks.insert(b_id).second) changed = true;
      }
    }
  }

  auto blk = [&](const Variable& v) { return bisim.block.at(u.find(v)); };

  for (const FlatAtom& atom : a2.atoms) {
    if (const EqVar* e = std::get_if<EqVar>(&atom)) {
      if (blk(e->lhs) != blk(e->rhs)) return false;
    } else if (const EqApp* e = std::get_if<EqApp>(&atom)) {
      auto it = bindings.find(u.find(e->lhs));
      if (it == bindings.end()) return false;
      if (it->second.sym != e->sym) return false;
      for (std::size_t i = 0; i < e->args.size(); ++i)
        if (bisim.block.at(u.find(it->second.args[i])) != blk(e->args[i])) return false;
    } else if (const FiniteAtom* f = std::get_if<FiniteAtom>(&atom)) {
      if (!fin_blocks.count(blk(f->var))) return false;
    }
  }
  return true;
}

}  // namespace treefol

#endif
