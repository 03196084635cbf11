#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_util.hpp"
#include "treefol/basic.hpp"

using namespace treefol;
using testutil::var;

namespace {

FunctionSymbol F1("f", 1), F2("f", 2), G1("g", 1), G2("g", 2);

BasicFormula bf(std::vector<FlatAtom> atoms) { return BasicFormula(std::move(atoms)); }

}  // namespace

TEST(LhsFini, Examples) {
  Variable x = var(5, "x"), y = var(4, "y"), z = var(3, "z"), u = var(2, "u");
  // x=f(y) ∧ z=f(y) ∧ finite(y)
  BasicFormula b = bf({EqApp{x, F1, {y}}, EqApp{z, F1, {y}}, FiniteAtom{y}});
  EXPECT_EQ(lhs_set(b), (VarSet{x, z}));
  EXPECT_EQ(fini_set(b), (VarSet{y}));

  EXPECT_TRUE(lhs_set(bf({})).empty());
  EXPECT_TRUE(fini_set(bf({})).empty());
  EXPECT_TRUE(lhs_set(bf({FiniteAtom{u}})).empty());
  EXPECT_EQ(fini_set(bf({EqApp{x, F1, {y}}, FiniteAtom{u}})), (VarSet{u}));
  EXPECT_EQ(fini_set(bf({FiniteAtom{u}, FiniteAtom{u}})), (VarSet{u}));
}

TEST(CheckSolved, Examples) {
  Variable x = var(5, "x"), y = var(4, "y"), z = var(3, "z");
  // x=x ∧ finite(y): not solved, x ⊁ x
  SolvednessReport r1 = check_solved(bf({EqVar{x, x}, FiniteAtom{y}}));
  EXPECT_FALSE(r1.solved);
  ASSERT_EQ(r1.violations.size(), 1u);
  EXPECT_EQ(r1.violations[0].first, SolvednessViolation::MisorderedVarEq);

  // x=f(y) ∧ z=f(y) ∧ finite(x): not solved, x both lhs and finite
  SolvednessReport r2 = check_solved(bf({EqApp{x, F1, {y}}, EqApp{z, F1, {y}}, FiniteAtom{x}}));
  EXPECT_FALSE(r2.solved);
  ASSERT_EQ(r2.violations.size(), 1u);
  EXPECT_EQ(r2.violations[0].first, SolvednessViolation::LhsInFini);

  EXPECT_TRUE(check_solved(bf({})).solved);
  EXPECT_TRUE(check_solved(bf({EqApp{x, F1, {y}}, EqApp{z, F1, {y}}, FiniteAtom{y}})).solved);

  SolvednessReport r3 = check_solved(bf({EqApp{x, F1, {y}}, EqApp{x, G1, {y}}}));
  EXPECT_FALSE(r3.solved);
  EXPECT_EQ(r3.violations[0].first, SolvednessViolation::DuplicateLhs);

  SolvednessReport r4 = check_solved(bf({FiniteAtom{y}, FiniteAtom{y}}));
  EXPECT_FALSE(r4.solved);
  EXPECT_EQ(r4.violations[0].first, SolvednessViolation::DuplicateFinite);
}

// Worked reachability example: in ∃uvw (z=f(u,v) ∧ v=g(v,u) ∧ w=f(u,v) ∧
// finite(u) ∧ finite(x)), the equation w=f(u,v) and the variable w are not
// reachable; everything else is.
TEST(Reachable, WorkedExample) {
  Variable z = var(10, "z"), x = var(9, "x");
  Variable u = var(3, "u"), v = var(2, "v"), w = var(1, "w");
  BasicFormula b = bf({EqApp{z, F2, {u, v}}, EqApp{v, G2, {v, u}}, EqApp{w, F2, {u, v}},
                       FiniteAtom{u}, FiniteAtom{x}});
  Reachability r = reachable(b, VarSet{z, x});
  EXPECT_TRUE(r.vars.count(z));
  EXPECT_TRUE(r.vars.count(u));
  EXPECT_TRUE(r.vars.count(v));
  EXPECT_FALSE(r.vars.count(w));
  ASSERT_EQ(r.eqs.size(), 2u);
  EXPECT_TRUE(std::any_of(r.eqs.begin(), r.eqs.end(), [&](const FlatAtom& a) {
    return atom_equal(a, FlatAtom(EqApp{z, F2, {u, v}}));
  }));
  EXPECT_TRUE(std::any_of(r.eqs.begin(), r.eqs.end(), [&](const FlatAtom& a) {
    return atom_equal(a, FlatAtom(EqApp{v, G2, {v, u}}));
  }));
  ASSERT_EQ(r.finis.size(), 2u);
}

TEST(Reachable, TrueAndCycle) {
  Variable x = var(2, "x"), y = var(1, "y");
  Reachability r0 = reachable(bf({}), VarSet{x});
  EXPECT_EQ(r0.vars, (VarSet{x}));
  EXPECT_TRUE(r0.eqs.empty());
  EXPECT_TRUE(r0.finis.empty());

  BasicFormula cyc = bf({EqApp{x, F1, {y}}, EqApp{y, F1, {x}}});
  Reachability r = reachable(cyc, VarSet{x});
  EXPECT_EQ(r.vars, (VarSet{x, y}));
  EXPECT_EQ(r.eqs.size(), 2u);
}

TEST(Reachable, MonotoneAndIdempotent) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> nv(1, 6), na(0, 8), coin(0, 1);
  for (int it = 0; it < 300; ++it) {
    int n = nv(rng);
    std::vector<Variable> vars;
    for (int i = 0; i < n; ++i) vars.push_back(var(i + 1, "v" + std::to_string(i)));
    BasicFormula b;
    int atoms = na(rng);
    for (int i = 0; i < atoms; ++i) {
      Variable l = vars[std::uniform_int_distribution<int>(0, n - 1)(rng)];
      if (coin(rng)) {
        b.atoms.push_back(EqVar{l, vars[std::uniform_int_distribution<int>(0, n - 1)(rng)]});
      } else {
        b.atoms.push_back(EqApp{l, F2,
                                {vars[std::uniform_int_distribution<int>(0, n - 1)(rng)],
                                 vars[std::uniform_int_distribution<int>(0, n - 1)(rng)]}});
      }
    }
    VarSet seeds1{vars[0]};
    VarSet seeds2{vars[0], vars[n - 1]};
    Reachability r1 = reachable(b, seeds1);
    Reachability r2 = reachable(b, seeds2);
    for (const Variable& v : r1.vars) EXPECT_TRUE(r2.vars.count(v));  // monotone
    Reachability r3 = reachable(b, r1.vars);
    EXPECT_EQ(r3.vars, r1.vars);  // idempotent
    EXPECT_EQ(r3.eqs.size(), r1.eqs.size());
  }
}

TEST(SelfReachable, Basics) {
  Variable x = var(3, "x"), y = var(2, "y"), z = var(1, "z");
  EXPECT_TRUE(self_reachable(x, bf({EqApp{x, F1, {x}}})));
  EXPECT_TRUE(self_reachable(x, bf({EqApp{x, F1, {y}}, EqApp{y, G1, {x}}})));
  EXPECT_FALSE(self_reachable(x, bf({EqApp{x, F1, {y}}, EqApp{y, G1, {z}}})));
  EXPECT_FALSE(self_reachable(z, bf({EqApp{x, F1, {x}}, EqVar{y, z}})));
}

TEST(Solved, LhsFiniDisjoint) {
  // for solved b, Lhs(b) ∩ FINI(b) = ∅
  Variable x = var(5, "x"), y = var(4, "y"), z = var(3, "z");
  BasicFormula b = bf({EqApp{x, F1, {y}}, EqApp{z, F1, {y}}, FiniteAtom{y}});
  ASSERT_TRUE(check_solved(b).solved);
  VarSet l = lhs_set(b), fi = fini_set(b);
  for (const Variable& v : l) EXPECT_FALSE(fi.count(v));
}
