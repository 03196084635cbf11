#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "treefol/discipline.hpp"
#include "treefol/formula.hpp"
#include "treefol/parser.hpp"
#include "treefol/printer.hpp"

using namespace treefol;
using testutil::var;

TEST(OrderKey, Basics) {
  EXPECT_TRUE(order_gt(var(2, "u"), var(1, "v")));
  EXPECT_FALSE(order_gt(var(1, "u"), var(1, "v")));
  EXPECT_FALSE(order_gt(Variable(OrderKey(1, 2), "u"), Variable(OrderKey(3, 4), "v")));
  OrderKey mid = OrderKey::between(OrderKey(1), OrderKey(2));
  EXPECT_TRUE(mid > OrderKey(1));
  EXPECT_TRUE(mid < OrderKey(2));
  EXPECT_EQ(OrderKey::int_above(OrderKey(7, 2)).value(), BigRational(4));
  EXPECT_EQ(OrderKey::int_above(OrderKey(-7, 2)).value(), BigRational(-3));
}

TEST(OrderKey, StrictTotalOrderProperty) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 20);
  auto draw = [&] { return Variable(OrderKey(num(rng), den(rng)), "x"); };
  for (int it = 0; it < 10000; ++it) {
    Variable a = draw(), b = draw(), c = draw();
    EXPECT_FALSE(order_gt(a, a));
    if (order_gt(a, b)) EXPECT_FALSE(order_gt(b, a));
    if (a != b) EXPECT_TRUE(order_gt(a, b) || order_gt(b, a));
    if (order_gt(a, b) && order_gt(b, c)) EXPECT_TRUE(order_gt(a, c));
  }
}

TEST(FreshVar, AboveContext) {
  VarSet ctx{var(1, "x"), var(2, "y")};
  Variable w = fresh_var_above(ctx, "w");
  EXPECT_TRUE(w.key() > OrderKey(2));
  EXPECT_FALSE(ctx.count(w));

  Variable a = fresh_var_above({}, "a");
  (void)a;

  Variable u1 = fresh_var_above(ctx, "u");
  Variable u2 = fresh_var_above(ctx, "u");
  EXPECT_NE(u1, u2);
  EXPECT_TRUE(u1.key() > OrderKey(2));
  EXPECT_TRUE(u2.key() > OrderKey(2));
}

TEST(Parser, SimpleExists) {
  Formula f = parse("ex y. x = f(y)");
  ASSERT_EQ(f.kind(), FKind::Exists);
  ASSERT_EQ(f.quant().size(), 1u);
  EXPECT_EQ(f.quant()[0].name(), "y");
  const Formula& body = f.child();
  ASSERT_EQ(body.kind(), FKind::Eq);
  EXPECT_TRUE(body.lhs().is_var());
  EXPECT_EQ(body.lhs().var().name(), "x");
  ASSERT_TRUE(body.rhs().is_app());
  EXPECT_EQ(body.rhs().sym().name(), "f");
  EXPECT_EQ(body.rhs().args()[0].var(), f.quant()[0]);
}

TEST(Parser, IntroFormula) {
  Formula f = parse("~(ex y. x = f(y) & ~(ex z,w. x = f(z) & w = f(w)))");
  ASSERT_EQ(f.kind(), FKind::Not);
  const Formula& ex1 = f.child();
  ASSERT_EQ(ex1.kind(), FKind::Exists);
  ASSERT_EQ(ex1.quant().size(), 1u);
  const Formula& conj = ex1.child();
  ASSERT_EQ(conj.kind(), FKind::And);
  ASSERT_EQ(conj.child(1).kind(), FKind::Not);
  const Formula& ex2 = conj.child(1).child();
  ASSERT_EQ(ex2.kind(), FKind::Exists);
  EXPECT_EQ(ex2.quant().size(), 2u);

  VarSet fv = free_vars(f);
  ASSERT_EQ(fv.size(), 1u);
  EXPECT_EQ(fv.begin()->name(), "x");
}

TEST(Parser, Errors) {
  EXPECT_THROW(parse("f(x"), ParseError);
  EXPECT_THROW(parse("f(x) = f(x,y)"), ParseError);
  EXPECT_THROW(parse("x ="), ParseError);
  EXPECT_THROW(parse("x = y y"), ParseError);
  try {
    parse("f(x) = f(x,y)");
    FAIL() << "expected arity conflict";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("f"), std::string::npos);
  }
}

TEST(Parser, PrecedenceAndConstants) {
  EXPECT_EQ(parse("a = b & c = d | e = h"), parse("((a = b) & (c = d)) | (e = h)"));
  EXPECT_EQ(parse("a=b -> c=d -> e=h"), parse("(a=b) -> ((c=d) -> (e=h))"));
  EXPECT_EQ(parse("~a=b & c=d"), parse("(~(a=b)) & (c=d)"));
  EXPECT_TRUE(equal_modulo_keys(parse("ex x. a=b -> x=x"), parse("ex x. (a=b -> x=x)")));
  // nullary application makes a constant; a bare identifier is a variable
  Formula k = parse("x = 0()");
  ASSERT_TRUE(k.rhs().is_app());
  EXPECT_EQ(k.rhs().sym().arity(), 0u);
  Formula v = parse("x = y");
  EXPECT_TRUE(v.rhs().is_var());
}

TEST(Printer, Basics) {
  EXPECT_EQ(print(Formula::tru()), "true");
  Variable x = var(1, "x"), y = var(2, "y");
  FunctionSymbol f("f", 1);
  EXPECT_EQ(print(Formula::eq(Term(x), Term(f, {Term(y)}))), "x = f(y)");
  EXPECT_EQ(print(Formula::eq(Term(x), Term(FunctionSymbol("c0", 0), {}))), "x = c0()");
}

TEST(Printer, RoundTripProperty) {
  testutil::RandomFormula gen(11);
  for (int it = 0; it < 400; ++it) {
    Formula f = gen(3);
    std::string s = print(f);
    Formula g;
    ASSERT_NO_THROW(g = parse(s)) << s;
    EXPECT_TRUE(equal_modulo_keys(f, g)) << s << "\n   vs " << print(g);
  }
}

TEST(Printer, ParsePrintFixpoint) {
  testutil::RandomFormula gen(23);
  for (int it = 0; it < 200; ++it) {
    std::string s = print(gen(3));
    EXPECT_EQ(print(parse(s)), s);
  }
}

TEST(FreeVars, Basics) {
  EXPECT_TRUE(free_vars(Formula::tru()).empty());
  Formula f = parse("ex y. x = f(y)");
  VarSet fv = free_vars(f);
  ASSERT_EQ(fv.size(), 1u);
  EXPECT_EQ(fv.begin()->name(), "x");
}

// §-style renaming example: the same z bound in two branches, with
// x ≻ y ≻ z ≻ v initially; both binders must be renamed apart and the one
// over z = x must rise above x.
TEST(Discipline, RenamesApartAndRaises) {
  Variable x = var(4, "x"), y = var(3, "y"), z = var(2, "z"), v = var(1, "v");
  FunctionSymbol f("f", 1);
  Formula inner1 = Formula::negate(Formula::exists({z}, Formula::eq(Term(z), Term(x))));
  Formula inner2 = Formula::negate(Formula::exists({z}, Formula::eq(Term(z), Term(v))));
  Formula phi = Formula::exists(
      {x}, Formula::conj(Formula::eq(Term(x), Term(f, {Term(y)})), Formula::conj(inner1, inner2)));

  Formula out = apply_discipline(phi);
  EXPECT_EQ(free_vars(out), free_vars(phi));
  EXPECT_TRUE(equal_modulo_keys(out, phi));  // structure preserved up to renaming
  ASSERT_EQ(out.kind(), FKind::Exists);
  Variable x2 = out.quant()[0];
  const Formula& body = out.child();
  Variable z1 = body.child(1).child(0).child().quant()[0];
  Variable z2 = body.child(1).child(1).child().quant()[0];
  EXPECT_NE(z1, z2);
  EXPECT_TRUE(order_gt(z1, x2));   // z = x branch: binder above x
  EXPECT_TRUE(order_gt(x2, y));    // x above the free y
  EXPECT_TRUE(order_gt(z2, v));
  // idempotent
  EXPECT_EQ(apply_discipline(out), out);
}

TEST(Discipline, RaisesAboveFree) {
  Variable x = var(1, "x"), y = var(2, "y");
  Formula f = Formula::exists({x}, Formula::eq(Term(x), Term(y)));
  Formula out = apply_discipline(f);
  ASSERT_EQ(out.kind(), FKind::Exists);
  EXPECT_TRUE(order_gt(out.quant()[0], y));
  EXPECT_EQ(free_vars(out), free_vars(f));
}

TEST(Discipline, UnchangedWhenAlreadyDisciplined) {
  // closed formula with distinct binders already satisfying (ii)
  Variable x = var(1, "x"), y = var(2, "y");
  FunctionSymbol f("f", 1);
  Formula g = Formula::exists(
      {x}, Formula::conj(Formula::eq(Term(x), Term(x)),
                         Formula::exists({y}, Formula::eq(Term(y), Term(f, {Term(x)})))));
  EXPECT_EQ(apply_discipline(g), g);
}

TEST(Discipline, PropertyIdempotentAndFreePreserving) {
  testutil::RandomFormula gen(29);
  for (int it = 0; it < 300; ++it) {
    Formula f = gen(3);
    Formula d = apply_discipline(f);
    EXPECT_EQ(free_vars(d), free_vars(f));
    EXPECT_EQ(apply_discipline(d), d);
    EXPECT_TRUE(equal_modulo_keys(f, f));
  }
}
