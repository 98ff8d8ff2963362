#include "doctest.h"
#include "itp/eval.hpp"

using namespace itp;

namespace {
Formula p_of(const LinTerm& t) { return pred_app("p", {t}); }
}

TEST_CASE("model search solves a direct constraint") {
  // 2c - y = 0 /\ p(c)
  Formula f = f_and(eq0(LinTerm::sym("c", Int(2)) - LinTerm("y")), p_of(LinTerm("c")));
  BoundedEval ev(Int(4));
  auto m = ev.search(f);
  REQUIRE(m);
  CHECK(2 * m->consts["c"] == m->consts["y"]);
  CHECK(m->preds["p"].count({m->consts["c"]}) == 1);
}

TEST_CASE("no bounded model for the parity conflict") {
  // A /\ B with A = 2c-y=0 /\ p(c), B = 2d-y=0 /\ not p(d)
  Formula a = f_and(eq0(LinTerm::sym("c", Int(2)) - LinTerm("y")), p_of(LinTerm("c")));
  Formula b = f_and(eq0(LinTerm::sym("d", Int(2)) - LinTerm("y")), f_not(p_of(LinTerm("d"))));
  BoundedEval ev(Int(6));
  CHECK_FALSE(ev.search(f_and(a, b)));

  // a - 2b = 0 /\ a - 2c - 1 = 0: even and odd at once
  Formula g = f_and(eq0(LinTerm("a") - LinTerm::sym("b", Int(2))),
                    eq0(LinTerm("a") - LinTerm::sym("c", Int(2)) - LinTerm(Int(1))));
  BoundedEval ev2(Int(6));
  CHECK_FALSE(ev2.search(g));
}

TEST_CASE("guarded quantifiers evaluate exactly through their solutions") {
  // forall x. (y - 2x != 0 \/ p(x)) under y = 4, p = {2}: guard pins x = 2
  Formula f = forall("x", f_or(f_not(eq0(LinTerm("y") - LinTerm::sym("x", Int(2)))),
                               p_of(LinTerm("x"))));
  Model m;
  m.consts["y"] = 4;
  m.preds["p"].insert({Int(2)});
  BoundedEval ev(Int(3));  // bound is irrelevant: solution x=2 found exactly
  CHECK(ev.eval(f, m));
  CHECK_FALSE(ev.approx_used());

  m.preds["p"].clear();
  CHECK_FALSE(ev.eval(f, m));

  // odd y: no solution, vacuously true
  m.consts["y"] = 5;
  CHECK(ev.eval(f, m));
}

TEST_CASE("multi-guard blocks solve through the lattice") {
  // forall x1 x2. (x1+x2-y != 0 \/ x1-x2 != 0 \/ p(x1)): unique solution when y even
  Formula f = forall(
      "x1", forall("x2", mk_or({f_not(eq0(LinTerm("x1") + LinTerm("x2") - LinTerm("y"))),
                                f_not(eq0(LinTerm("x1") - LinTerm("x2"))),
                                p_of(LinTerm("x1"))})));
  Model m;
  m.consts["y"] = 10;  // far outside the bound: x1 = x2 = 5
  m.preds["p"].insert({Int(5)});
  BoundedEval ev(Int(2));
  CHECK(ev.eval(f, m));
  CHECK_FALSE(ev.approx_used());
  m.preds["p"].clear();
  CHECK_FALSE(ev.eval(f, m));
}

TEST_CASE("div terms evaluate with floor semantics") {
  Formula f = eq0(LinTerm(FunApp::div(LinTerm("y"), Int(2))) - LinTerm("z"));
  Model m;
  m.consts["y"] = -7;
  m.consts["z"] = -4;
  BoundedEval ev;
  CHECK(ev.eval(f, m));
}

TEST_CASE("equivalence oracle distinguishes formulas") {
  Formula f = divides(Int(2), LinTerm("y"));
  Formula g = eq0(LinTerm("y"));
  BoundedEval ev(Int(4));
  CHECK_FALSE(ev.equivalent(f, g));
  CHECK(ev.equivalent(f, divides(Int(2), -LinTerm("y"))));
}

TEST_CASE("function tables are searched lazily") {
  // f(c) = c + 1 /\ f(f(c)) = 0 has a model; graph coherence holds by construction
  FunApp fc("f", {LinTerm("c")});
  FunApp ffc("f", {LinTerm(fc)});
  Formula f = f_and(eq0(LinTerm(fc) - LinTerm("c") - LinTerm(Int(1))), eq0(LinTerm(ffc)));
  BoundedEval ev(Int(4));
  auto m = ev.search(f);
  REQUIRE(m);
  Int c = m->consts["c"];
  CHECK(m->funs["f"].at({c}) == c + 1);
  CHECK(m->funs["f"].at({c + 1}) == 0);
}
