#include "doctest.h"
#include "itp/parser.hpp"
#include "itp/printer.hpp"

using namespace itp;

namespace {

const char* kExample3 =
    "(declare-const y Int) (declare-const c Int) (declare-const d Int)\n"
    "(declare-pred p (Int))\n"
    "(assert-A (and (= (- (* 2 c) y) 0) (p c)))\n"
    "(assert-B (and (= (- (* 2 d) y) 0) (not (p d))))\n";

}  // namespace

TEST_CASE("the running example file parses to the expected structure") {
  Problem p = parse_problem(kExample3);
  CHECK(p.sig.consts.size() == 3);
  CHECK(p.sig.preds.count("p") == 1);
  Formula a = f_and(eq0(LinTerm::sym("c", Int(2)) - LinTerm("y")),
                    pred_app("p", {LinTerm("c")}));
  Formula b = f_and(eq0(LinTerm::sym("d", Int(2)) - LinTerm("y")),
                    f_not(pred_app("p", {LinTerm("d")})));
  CHECK(p.part_A == a);
  CHECK(p.part_B == b);
}

TEST_CASE("trivial problem") {
  Problem p = parse_problem("(assert-A true)(assert-B true)");
  CHECK(p.part_A.is_true());
  CHECK(p.part_B.is_true());
}

TEST_CASE("undeclared symbols are sort errors naming the offender") {
  try {
    parse_problem("(assert-A (q 1))(assert-B true)");
    FAIL("expected SortError");
  } catch (const SortError& e) {
    CHECK(std::string(e.what()).find("q") != std::string::npos);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_problem("(assert-A (and true");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line >= 1);
  }
}

TEST_CASE("sort checking rejects arithmetic on arrays") {
  const char* text =
      "(declare-const M (Array Int Int)) (declare-const i Int)"
      "(assert-A (= (+ M 1) i)) (assert-B true)";
  CHECK_THROWS_AS(parse_problem(text), SortError);
}

TEST_CASE("arrays: select/store are built in and sorted") {
  const char* text =
      "(declare-const M (Array Int Int)) (declare-const Mp (Array Int Int))"
      "(declare-const a Int) (declare-const d Int) (declare-const b Int)"
      "(assert-A (= Mp (store M a d)))"
      "(assert-B (not (= (select Mp b) (select M b))))";
  Problem p = parse_problem(text);
  CHECK(p.sig.has_arrays);
  CHECK(free_symbols(p.part_A).funs.count("store") == 1);
}

TEST_CASE("division terms, comparisons, and implication sugar") {
  const char* text =
      "(declare-const y Int) (declare-pred p (Int))"
      "(assert-A (=> (divides 2 y) (p (div y 2))))"
      "(assert-B (< y 4))";
  Problem p = parse_problem(text);
  CHECK(p.part_A == f_or(f_not(divides(Int(2), LinTerm("y"))),
                         pred_app("p", {LinTerm(FunApp::div(LinTerm("y"), Int(2)))})));
  CHECK(p.part_B == leq0(LinTerm("y") - LinTerm(Int(3))));
}

TEST_CASE("graph atoms parse through the _p convention") {
  const char* text =
      "(declare-const b Int) (declare-fun f (Int) Int)"
      "(assert-A (exists ((x Int)) (and (f_p 2 x) (= b x))))"
      "(assert-B true)";
  Problem p = parse_problem(text);
  auto rb = match_rel_exists(p.part_A);
  REQUIRE(rb);
  CHECK(rb->graph_atom.pred() == "f");
  CHECK(rb->graph_atom.graph());
}

TEST_CASE("reserved names are rejected") {
  CHECK_THROWS_AS(parse_problem("(declare-const $1 Int)"), ParseError);
  CHECK_THROWS_AS(parse_problem("(declare-const select Int)"), ParseError);
  CHECK_THROWS_AS(parse_problem("(declare-fun f (Int) Int)(declare-const f_p Int)"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_problem("(declare-const x Int)(assert-A (forall ((x Int)) (= x 0)))(assert-B true)"),
      SortError);
}

TEST_CASE("round-trip: parse(print(problem)) is structurally identical") {
  const char* texts[] = {
      kExample3,
      "(declare-const y Int) (declare-pred p (Int))"
      "(assert-A (forall ((x Int)) (or (not (= (- y (* 2 x)) 0)) (p x))))"
      "(assert-B (<= y 3))",
      "(declare-const a Int) (declare-const b Int) (declare-fun f (Int) Int)"
      "(assert-A (= (f (+ a 1)) b)) (assert-B (divides 3 (- a b)))",
      "(declare-const M (Array Int Int)) (declare-const a Int) (declare-const d Int)"
      "(assert-A (= (select (store M a d) a) d)) (assert-B true)",
  };
  for (const char* t : texts) {
    Problem p1 = parse_problem(t);
    std::string printed = print_problem(p1);
    Problem p2 = parse_problem(printed);
    CHECK(p1.part_A == p2.part_A);
    CHECK(p1.part_B == p2.part_B);
    CHECK(p1.sig.consts == p2.sig.consts);
  }
}

TEST_CASE("printed formulas re-parse") {
  Problem p = parse_problem(kExample3);
  Formula i = forall("x", f_or(f_not(eq0(LinTerm("y") - LinTerm::sym("x", Int(2)))),
                               pred_app("p", {LinTerm("x")})));
  Formula j = parse_formula_text(print_formula(i), p.sig);
  CHECK(i == j);

  Formula dv = f_or(f_not(divides(Int(2), LinTerm("y"))),
                    pred_app("p", {LinTerm(FunApp::div(LinTerm("y"), Int(2)))}));
  CHECK(parse_formula_text(print_formula(dv), p.sig) == dv);
}
