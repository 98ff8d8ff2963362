#include "doctest.h"
#include "itp/eval.hpp"
#include "itp/formula.hpp"

#include <random>

using namespace itp;

namespace {

Formula p_of(const LinTerm& t) { return pred_app("p", {t}); }

// random quantifier-free formula over constants c0..c2 and predicate p/1
Formula random_formula(std::mt19937& rng, int depth) {
  auto rint = [&](int lo, int hi) { return int(rng() % (hi - lo + 1)) + lo; };
  auto rterm = [&]() {
    LinTerm t(Int(rint(-3, 3)));
    for (int i = 0; i < 3; ++i)
      t += LinTerm::sym("c" + std::to_string(i), Int(rint(-2, 2)));
    return t;
  };
  if (depth == 0) {
    switch (rint(0, 3)) {
      case 0: return eq0(rterm());
      case 1: return leq0(rterm());
      case 2: return divides(Int(rint(2, 4)), rterm());
      default: return p_of(rterm());
    }
  }
  switch (rint(0, 2)) {
    case 0: return f_not(random_formula(rng, depth - 1));
    case 1: return f_and(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default: return f_or(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("nnf: De Morgan and quantifier duality") {
  Formula a = p_of(LinTerm("x"));
  Formula b = eq0(LinTerm("y"));
  Formula f = f_not(f_and(a, b));
  Formula g = nnf(f);
  CHECK(g == f_or(f_not(a), f_not(b)));

  Formula q = f_not(forall("x", p_of(LinTerm("x"))));
  CHECK(nnf(q) == exists("x", f_not(p_of(LinTerm("x")))));
}

TEST_CASE("nnf keeps negated atoms; inequalities negate arithmetically") {
  FunApp fb("f", {LinTerm("b")});
  FunApp fc("f", {LinTerm("c")});
  Formula f = f_not(eq0(LinTerm(fb) - LinTerm(fc) - LinTerm("d")));
  Formula g = nnf(f);
  CHECK(g.kind() == FKind::Not);
  CHECK(g.kid(0).kind() == FKind::EqZero);

  // not (t <= 0) becomes -t+1 <= 0
  Formula h = nnf(f_not(leq0(LinTerm("x"))));
  CHECK(h == leq0(-LinTerm("x") + LinTerm(Int(1))));
}

TEST_CASE("nnf is equivalent on random assignments") {
  std::mt19937 rng(7);
  for (int round = 0; round < 100; ++round) {
    Formula f = random_formula(rng, 3);
    Formula g = nnf(f);
    Model m;
    for (int i = 0; i < 3; ++i)
      m.consts["c" + std::to_string(i)] = Int(int(rng() % 17) - 8);
    // predicate table over every tuple reachable in [-60, 60]
    for (int v = -60; v <= 60; ++v)
      if (rng() % 2) m.preds["p"].insert({Int(v)});
    BoundedEval ev(Int(8));
    CHECK(ev.eval(f, m) == ev.eval(g, m));
  }
}

TEST_CASE("free symbols") {
  // forall x. (y - 2x != 0 \/ p(x)) has free symbols {y, p}
  Formula f = forall("x", f_or(f_not(eq0(LinTerm("y") - LinTerm::sym("x", Int(2)))),
                               p_of(LinTerm("x"))));
  SymbolSet s = free_symbols(f);
  CHECK(s.consts == std::set<std::string, SymLess>{"y"});
  CHECK(s.preds == std::set<std::string>{"p"});
  CHECK(s.funs.empty());

  SymbolSet t = free_symbols(f_false());
  CHECK(t.consts.empty());
  CHECK(t.preds.empty());

  // A of the two-function example: b = f(2) /\ f(a+1) = c /\ d = 1
  FunApp f2("f", {LinTerm(Int(2))});
  FunApp fa("f", {LinTerm("a") + LinTerm(Int(1))});
  Formula a = mk_and({eq0(LinTerm("b") - LinTerm(f2)), eq0(LinTerm(fa) - LinTerm("c")),
                      eq0(LinTerm("d") - LinTerm(Int(1)))});
  SymbolSet u = free_symbols(a);
  CHECK(u.consts == std::set<std::string, SymLess>{"a", "b", "c", "d"});
  CHECK(u.funs == std::set<std::string>{"f"});
}

TEST_CASE("substitute on formulas") {
  // [x/c] (y - 2x != 0 \/ p(x))
  Formula f = f_or(f_not(eq0(LinTerm("y") - LinTerm::sym("x", Int(2)))), p_of(LinTerm("x")));
  Formula g = substitute(f, "x", LinTerm("c"));
  CHECK(g == f_or(f_not(eq0(LinTerm("y") - LinTerm::sym("c", Int(2)))), p_of(LinTerm("c"))));

  CHECK(substitute(f, "x", LinTerm("x")) == f);

  // substitution under a predicate application with a div term
  LinTerm dv(FunApp::div(LinTerm("t"), Int(2)));
  Formula h = substitute(p_of(LinTerm("x")), "x", dv);
  CHECK(h == p_of(dv));
}

TEST_CASE("substitute round-trip through a fresh variable") {
  std::mt19937 rng(3);
  for (int round = 0; round < 50; ++round) {
    Formula f = random_formula(rng, 2);
    Formula g = substitute(substitute(f, "c0", LinTerm("tmp")), "tmp", LinTerm("c0"));
    CHECK(g == f);
  }
}

TEST_CASE("guarded recognizers match Eq. (2)") {
  // forall x. (-2x + y != 0 \/ p(x))
  Formula f = forall("x", f_or(f_not(eq0(LinTerm::sym("x", Int(-2)) + LinTerm("y"))),
                               p_of(LinTerm("x"))));
  auto g = match_guarded_forall(f);
  REQUIRE(g);
  CHECK(g->alpha == -2);
  CHECK(g->t == LinTerm("y"));
  CHECK(g->rest == p_of(LinTerm("x")));

  // alpha = 0 does not match
  Formula h = forall("x", f_or(f_not(eq0(LinTerm("y"))), p_of(LinTerm("x"))));
  CHECK_FALSE(match_guarded_forall(h));

  // x inside a function argument of the guard does not match
  FunApp fx("f", {LinTerm("x")});
  Formula k = forall("x", f_or(f_not(eq0(LinTerm("x") + LinTerm(fx))), p_of(LinTerm("x"))));
  CHECK_FALSE(match_guarded_forall(k));

  // exists x. (2x - y = 0 /\ p(x))
  Formula e = exists("x", f_and(eq0(LinTerm::sym("x", Int(2)) - LinTerm("y")),
                                p_of(LinTerm("x"))));
  auto ge = match_guarded_exists(e);
  REQUIRE(ge);
  CHECK(ge->alpha == 2);

  // bare guard: missing phi reads as true/false
  Formula bare = exists("x", eq0(LinTerm::sym("x", Int(3)) - LinTerm("y")));
  auto gb = match_guarded_exists(bare);
  REQUIRE(gb);
  CHECK(gb->rest.is_true());
}

TEST_CASE("relational binding recognizer, form (3)") {
  Formula g = exists("x", f_and(pred_app("f", {LinTerm(Int(2)), LinTerm("x")}, true),
                                eq0(LinTerm("b") - LinTerm("x"))));
  auto rb = match_rel_exists(g);
  REQUIRE(rb);
  CHECK(rb->var == "x");
  CHECK(rb->rest == eq0(LinTerm("b") - LinTerm("x")));
}
