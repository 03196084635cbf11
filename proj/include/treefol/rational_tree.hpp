#ifndef TREEFOL_RATIONAL_TREE_HPP
#define TREEFOL_RATIONAL_TREE_HPP

#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "treefol/term.hpp"

namespace treefol {

// A (possibly infinite) rational tree represented as a finite directed
// graph: node ids with a symbol and child ids. Infinite trees are exactly
// the graphs with a cycle reachable from the root.
struct RationalTree {
  struct Node {
    FunctionSymbol sym;
    std::vector<int> children;
  };
  std::vector<Node> nodes;
  int root = 0;

  int add(FunctionSymbol sym, std::vector<int> children) {
    assert(sym.arity() == children.size());
    nodes.push_back(Node{std::move(sym), std::move(children)});
    return static_cast<int>(nodes.size()) - 1;
  }

  RationalTree at(int node) const {
    RationalTree t = *this;
    t.root = node;
    return t;
  }

  static RationalTree from_term(const Term& t) {
    RationalTree tr;
    tr.root = build(tr, t);
    return tr;
  }

 private:
  static int build(RationalTree& tr, const Term& t) {
    assert(t.is_app() && "rational trees are ground");
    std::vector<int> kids;
    kids.reserve(t.args().size());
    for (const Term& a : t.args()) kids.push_back(build(tr, a));
    return tr.add(t.sym(), std::move(kids));
  }
};

// Finite iff no cycle is reachable from the root: an acyclic reachable
// subgraph unfolds to finitely many nodes.
inline bool is_finite(const RationalTree& t) {
  enum class Mark { White, Gray, Black };
  std::vector<Mark> mark(t.nodes.size(), Mark::White);
  // iterative DFS with an explicit stack of (node, next-child-index)
  std::vector<std::pair<int, std::size_t>> stack{{t.root, 0}};
  mark[t.root] = Mark::Gray;
  while (!stack.empty()) {
    auto& [n, i] = stack.back();
    const auto& kids = t.nodes[n].children;
    if (i == kids.size()) {
      mark[n] = Mark::Black;
      stack.pop_back();
      continue;
    }
    int c = kids[i++];
    if (mark[c] == Mark::Gray) return false;
    if (mark[c] == Mark::White) {
      mark[c] = Mark::Gray;
      stack.emplace_back(c, 0);
    }
  }
  return true;
}

// Tree equality is bisimilarity of the two graphs: a pair revisited along
// a path may be assumed equal (the coinductive step).
inline bool tree_equal(const RationalTree& a, int ra, const RationalTree& b, int rb,
                       std::set<std::pair<int, int>>& assumed) {
  if (!assumed.insert({ra, rb}).second) return true;
  const auto& na = a.nodes[ra];
  const auto& nb = b.nodes[rb];
  if (na.sym != nb.sym) return false;
  for (std::size_t i = 0; i < na.children.size(); ++i)
    if (!tree_equal(a, na.children[i], b, nb.children[i], assumed)) return false;
  return true;
}

inline bool tree_equal(const RationalTree& a, const RationalTree& b) {
  std::set<std::pair<int, int>> assumed;
  return tree_equal(a, a.root, b, b.root, assumed);
}

}  // namespace treefol

#endif
