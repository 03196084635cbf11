#ifndef TREEFOL_WORKING_HPP
#define TREEFOL_WORKING_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "treefol/basic.hpp"
#include "treefol/normalize.hpp"

namespace treefol {

// One node of a working-formula tree: ¬^level(∃quant basic ∧ ⋀ children).
// The level k ∈ 0..5 records which conditions of the working-formula
// definition the node currently satisfies.
struct WorkingNode {
  int id = 0;
  int level = 0;
  std::vector<Variable> quant;
  BasicFormula basic;
  std::vector<std::unique_ptr<WorkingNode>> children;

  bool is_leaf() const { return children.empty(); }

  int depth() const {
    int d = 0;
    for (const auto& c : children) d = std::max(d, c->depth());
    return 1 + d;
  }

  std::size_t subtree_size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c->subtree_size();
    return n;
  }

  VarSet all_vars() const {
    VarSet out = basic.vars();
    for (const Variable& v : quant) out.insert(v);
    for (const auto& c : children)
      for (const Variable& v : c->all_vars()) out.insert(v);
    return out;
  }

  VarSet bound_vars() const {
    VarSet out(quant.begin(), quant.end());
    for (const auto& c : children)
      for (const Variable& v : c->bound_vars()) out.insert(v);
    return out;
  }

  // Free variables of the subtree (discipline keeps bound and free apart).
  VarSet free_vars() const {
    VarSet out = all_vars();
    for (const Variable& v : bound_vars()) out.erase(v);
    return out;
  }
};

using WorkingNodePtr = std::unique_ptr<WorkingNode>;

inline NormalizedFormula to_normalized(const WorkingNode& n) {
  NormalizedFormula out;
  out.quant = n.quant;
  out.basic = n.basic;
  for (const auto& c : n.children) out.children.push_back(to_normalized(*c));
  return out;
}

inline Formula to_formula(const WorkingNode& n) { return to_formula(to_normalized(n)); }

namespace detail {

inline WorkingNodePtr build_working(const NormalizedFormula& n, int level, int& next_id) {
  auto node = std::make_unique<WorkingNode>();
  node->id = next_id++;
  node->level = level;
  node->quant = n.quant;
  for (const FlatAtom& a : n.basic.atoms)
    if (!is_true_atom(a)) node->basic.atoms.push_back(a);
  for (const NormalizedFormula& c : n.children)
    node->children.push_back(build_working(c, 0, next_id));
  return node;
}

}  // namespace detail

// The initial working formula of a normalized p1:
//   ¬⁴(∃ε true ∧ ¬⁰(∃ε true ∧ p1))
// with every negation of p1 at level 0.
inline WorkingNodePtr init_working(const NormalizedFormula& p1, int& next_id) {
  auto root = std::make_unique<WorkingNode>();
  root->id = next_id++;
  root->level = 4;
  auto mid = std::make_unique<WorkingNode>();
  mid->id = next_id++;
  mid->level = 0;
  mid->children.push_back(detail::build_working(p1, 0, next_id));
  root->children.push_back(std::move(mid));
  return root;
}

inline WorkingNodePtr init_working(const NormalizedFormula& p1) {
  int id = 1;
  return init_working(p1, id);
}

// Syntactic working-formula conditions for a node at level k (conditions
// ≤ k must hold; condition 1's semantic half is validated externally).
//   1. parent's Lhs ∪ FINI included in the node's Lhs ∪ FINI
//   2. equation left-hand sides distinct; u=v implies u ≻ v
//   3. basic solved
//   4. parent's equations included in the node's equations
//   5. quantified variables, equations and finite atoms all reachable in
//      ∃quant basic; every child has an atom not in the node's basic
inline void validate_working_node(const WorkingNode& n, const WorkingNode* parent,
                                  std::vector<std::string>& errors) {
  auto fail = [&](const std::string& msg) {
    errors.push_back("node " + std::to_string(n.id) + " (level " + std::to_string(n.level) +
                     "): " + msg);
  };
  if (n.level >= 1 && parent) {
    VarSet pl = lhs_set(parent->basic), pf = fini_set(parent->basic);
    VarSet nl = lhs_set(n.basic), nf = fini_set(n.basic);
    for (const Variable& v : pl)
      if (!nl.count(v) && !nf.count(v)) fail("condition 1: parent lhs " + v.name() + " missing");
    for (const Variable& v : pf)
      if (!nl.count(v) && !nf.count(v)) fail("condition 1: parent fini " + v.name() + " missing");
  }
  if (n.level >= 2) {
    VarSet seen;
    for (const FlatAtom& a : n.basic.atoms) {
      if (const Variable* l = eq_lhs(a)) {
        if (!seen.insert(*l).second) fail("condition 2: duplicate lhs " + l->name());
      }
      if (const EqVar* e = std::get_if<EqVar>(&a))
        if (!order_gt(e->lhs, e->rhs)) fail("condition 2: misordered " + e->lhs.name());
    }
  }
  if (n.level >= 3) {
    if (!check_solved(n.basic).solved) fail("condition 3: basic not solved");
  }
  if (n.level >= 4 && parent) {
    for (const FlatAtom& a : parent->basic.atoms)
      if (is_eq(a) && !n.basic.contains(a)) fail("condition 4: parent equation missing");
  }
  if (n.level >= 5) {
    VarSet quant(n.quant.begin(), n.quant.end());
    VarSet seeds;
    for (const Variable& v : n.basic.vars())
      if (!quant.count(v)) seeds.insert(v);
    Reachability r = reachable(n.basic, seeds);
    for (const Variable& v : n.quant)
      if (!r.vars.count(v)) fail("condition 5: unreachable quantified " + v.name());
    std::size_t n_eqs = n.basic.equations().size();
    std::size_t n_finis = n.basic.finites().size();
    if (r.eqs.size() != n_eqs) fail("condition 5: unreachable equation");
    if (r.finis.size() != n_finis) fail("condition 5: unreachable finite atom");
    for (const auto& c : n.children) {
      bool has_extra = false;
      for (const FlatAtom& a : c->basic.atoms)
        if (!is_true_atom(a) && !n.basic.contains(a)) {
          has_extra = true;
          break;
        }
      if (!has_extra) fail("condition 5: child " + std::to_string(c->id) + " adds no atom");
    }
  }
  for (const auto& c : n.children) validate_working_node(*c, &n, errors);
}

inline std::vector<std::string> validate_working_tree(const WorkingNode& root) {
  std::vector<std::string> errors;
  validate_working_node(root, nullptr, errors);
  return errors;
}

}  // namespace treefol

#endif
