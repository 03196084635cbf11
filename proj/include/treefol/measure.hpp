#ifndef TREEFOL_MEASURE_HPP
#define TREEFOL_MEASURE_HPP

#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "treefol/working.hpp"

namespace treefol {

// The 10-tuple of the termination proof. n1 is the tower function α and
// grows hyper-exponentially with depth, so it carries a saturation flag:
// exact below 2^4096, "huge" above. The engine never compares saturated
// values; rules that touch the tree shape decide the α component locally
// (deletion and distribution strictly decrease it, everything else leaves
// it unchanged), and only the components n2..n10 are compared numerically.
struct MeasureTuple {
  BigInt n1;
  bool n1_saturated = false;
  std::array<BigInt, 11> n{};  // n[2]..n[10] used

  std::string str() const {
    std::ostringstream os;
    os << '(' << (n1_saturated ? std::string("huge") : n1.str());
    for (int i = 2; i <= 10; ++i) os << ',' << n[i].str();
    os << ')';
    return os.str();
  }
};

namespace measure_detail {

constexpr long kAlphaExponentCap = 4096;

struct Alpha {
  BigInt value;
  bool saturated = false;
};

inline Alpha alpha_of(const WorkingNode& n) {
  BigInt expo = 0;
  bool sat = false;
  for (const auto& c : n.children) {
    Alpha a = alpha_of(*c);
    if (a.saturated) sat = true;
    expo += a.value;
    if (expo > kAlphaExponentCap) sat = true;
  }
  if (sat) return Alpha{BigInt(0), true};
  return Alpha{BigInt(1) << static_cast<unsigned>(expo.convert_to<long>()), false};
}

// λ(u,a) of the termination proof; equations only matter.
struct Lambda {
  const BasicFormula& basic;
  bool guard_ok;  // distinct lhs and ≻-ordered var equations
  std::map<Variable, const FlatAtom*> by_lhs;
  std::map<Variable, BigInt> memo;

  explicit Lambda(const BasicFormula& b) : basic(b) {
    guard_ok = true;
    VarSet seen;
    for (const FlatAtom& a : b.atoms) {
      if (const Variable* l = eq_lhs(a)) {
        if (!seen.insert(*l).second) guard_ok = false;
        by_lhs.emplace(*l, &a);
      }
      if (const EqVar* e = std::get_if<EqVar>(&a))
        if (!order_gt(e->lhs, e->rhs)) guard_ok = false;
    }
  }

  BigInt of(const Variable& u) {
    if (!guard_ok) return 0;
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    BigInt r;
    auto eq = by_lhs.find(u);
    if (eq == by_lhs.end() || self_reachable(u, basic)) {
      r = 1;
    } else if (const EqVar* e = std::get_if<EqVar>(eq->second)) {
      r = 1 + of(e->rhs);
    } else {
      const EqApp& e = std::get<EqApp>(*eq->second);
      r = 2;
      for (const Variable& v : e.args) r += of(v);
    }
    memo.emplace(u, r);
    return r;
  }
};

struct Acc {
  std::map<Variable, BigInt>* rank;
  MeasureTuple* m;

  void visit(const WorkingNode& n) {
    switch (n.level) {
      case 0: m->n[2] += 1; break;
      case 1: {
        m->n[3] += 1;
        for (const FlatAtom& a : n.basic.atoms) {
          if (std::holds_alternative<EqApp>(a)) m->n[4] += 1;
          // every occurrence of every variable counts for n5
          if (const EqVar* e = std::get_if<EqVar>(&a)) {
            m->n[5] += rank->at(e->lhs) + rank->at(e->rhs);
            if (order_gt(e->rhs, e->lhs)) m->n[6] += 1;
          } else if (const EqApp* e = std::get_if<EqApp>(&a)) {
            m->n[5] += rank->at(e->lhs);
            for (const Variable& v : e->args) m->n[5] += rank->at(v);
          } else if (const FiniteAtom* f = std::get_if<FiniteAtom>(&a)) {
            m->n[5] += rank->at(f->var);
          }
        }
        break;
      }
      case 2: {
        m->n[7] += 1;
        Lambda lam(n.basic);
        for (const FlatAtom& a : n.basic.atoms)
          if (const FiniteAtom* f = std::get_if<FiniteAtom>(&a)) m->n[8] += lam.of(f->var);
        break;
      }
      case 3: m->n[9] += 1; break;
      case 4: m->n[10] += 1; break;
      default: break;
    }
    for (const auto& c : n.children) visit(*c);
  }
};

}  // namespace measure_detail

template <class ForestT>
inline MeasureTuple compute_measure(const ForestT& forest) {
  MeasureTuple m;
  // rank variables 1..N by ≻ within the current state
  VarSet all;
  for (const auto& t : forest)
    for (const Variable& v : t->all_vars()) all.insert(v);
  std::map<Variable, BigInt> rank;
  BigInt r = 0;
  for (const Variable& v : all) rank.emplace(v, ++r);  // VarSet is key-ascending

  bool sat = false;
  for (const auto& t : forest) {
    measure_detail::Alpha a = measure_detail::alpha_of(*t);
    if (a.saturated) sat = true;
    m.n1 += a.value;
  }
  m.n1_saturated = sat;

  measure_detail::Acc acc{&rank, &m};
  for (const auto& t : forest) acc.visit(*t);
  return m;
}

// λ exposed for tests of the n8 component.
inline BigInt lambda_of(const Variable& u, const BasicFormula& a) {
  measure_detail::Lambda lam(a);
  return lam.of(u);
}

// Compare the n2..n10 suffix lexicographically: -1, 0, 1.
inline int compare_suffix(const MeasureTuple& a, const MeasureTuple& b) {
  for (int i = 2; i <= 10; ++i) {
    if (a.n[i] < b.n[i]) return -1;
    if (a.n[i] > b.n[i]) return 1;
  }
  return 0;
}

}  // namespace treefol

#endif
