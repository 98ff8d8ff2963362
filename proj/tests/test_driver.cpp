#include <fstream>

#include "doctest.h"
#include "itp/driver.hpp"
#include "itp/eval.hpp"
#include "itp/guards.hpp"
#include "itp/printer.hpp"

using namespace itp;

namespace {

const char* kExample3 =
    "(declare-const y Int) (declare-const c Int) (declare-const d Int)\n"
    "(declare-pred p (Int))\n"
    "(assert-A (and (= (- (* 2 c) y) 0) (p c)))\n"
    "(assert-B (and (= (- (* 2 d) y) 0) (not (p d))))\n";

const char* kExample11 =
    "(declare-const a Int) (declare-const b Int) (declare-const c Int) (declare-const d Int)\n"
    "(declare-fun f (Int) Int)\n"
    "(assert-A (and (= b (f 2)) (= (f (+ a 1)) c) (= d 1)))\n"
    "(assert-B (and (= a 1) (= (f b) (+ (f c) d))))\n";

}  // namespace

TEST_CASE("pipeline: div-form output of the running example is pinned") {
  Problem p = parse_problem(kExample3);
  Options opt;
  opt.div_form = true;
  RunOutput out = run_pipeline(p, opt);
  CHECK(out.exit_code == 0);
  CHECK(out.text == "(or (not (divides 2 y)) (p (div y 2)))\n");
}

TEST_CASE("pipeline: satisfiable input exits 1") {
  Problem p = parse_problem(
      "(declare-const c Int)(assert-A (<= c 0))(assert-B (<= 0 c))");
  RunOutput out = run_pipeline(p, {});
  CHECK(out.exit_code == 1);
  CHECK(out.text == "satisfiable\n");
}

TEST_CASE("pipeline: function example verifies under both orders") {
  Problem p = parse_problem(kExample11);

  Options o1;
  o1.verify = true;
  RunOutput r1 = run_pipeline(p, o1);
  CHECK(r1.exit_code == 0);
  CHECK(r1.text.find("verified") != std::string::npos);
  // equivalent to a != 1 \/ (b = c /\ d = 1) over [-4, 4]
  Formula i1 = f_or(f_not(eq0(LinTerm("a") - LinTerm(Int(1)))),
                    f_and(eq0(LinTerm("b") - LinTerm("c")),
                          eq0(LinTerm("d") - LinTerm(Int(1)))));
  BoundedEval ev(Int(4), 40000000);
  CHECK(ev.equivalent(r1.interpolant, i1));

  Options o2;
  o2.verify = true;
  o2.cfg.fc_order = StrategyConfig::FcOrder::Reverse;
  RunOutput r2 = run_pipeline(p, o2);
  CHECK(r2.exit_code == 0);
  CHECK(r2.text.find("verified") != std::string::npos);
  Formula i2 = f_and(f_or(f_not(eq0(LinTerm("a") - LinTerm(Int(1)))),
                          eq0(LinTerm("b") - LinTerm("c"))),
                     eq0(LinTerm("d") - LinTerm(Int(1))));
  BoundedEval ev2(Int(4), 40000000);
  CHECK(ev2.equivalent(r2.interpolant, i2));
}

TEST_CASE("pipeline: proof trace export") {
  Problem p = parse_problem(kExample3);
  Options opt;
  opt.proof_path = "/tmp/itp_trace_test.txt";
  RunOutput out = run_pipeline(p, opt);
  CHECK(out.exit_code == 0);
  std::ifstream f(opt.proof_path);
  REQUIRE(f.good());
  std::string first;
  std::getline(f, first);
  CHECK(first.rfind("(node 0 ", 0) == 0);
}

TEST_CASE("pipeline: options from the problem file apply") {
  std::string text = std::string(kExample11) + "(set-option :fc-order reverse)\n";
  Problem p = parse_problem(text);
  Options opt;
  apply_problem_options(p, opt);
  CHECK(opt.cfg.fc_order == StrategyConfig::FcOrder::Reverse);
}

TEST_CASE("pipeline: printed interpolants re-parse and re-verify") {
  Problem p = parse_problem(kExample3);
  Options opt;
  RunOutput out = run_pipeline(p, opt);
  REQUIRE(out.exit_code == 0);
  std::string line = out.text.substr(0, out.text.find('\n'));
  Formula re = parse_formula_text(line, p.sig);
  CHECK(re == out.interpolant);
  CheckReport rep = check_interpolant(p.part_A, p.part_B, re, p.sig, {});
  CHECK(rep.verdict == CheckReport::Verdict::Verified);
}

TEST_CASE("pipeline: relational output keeps graph atoms and still verifies") {
  Problem p = parse_problem(kExample11);
  Options opt;
  opt.relational = true;
  opt.verify = true;
  RunOutput out = run_pipeline(p, opt);
  CHECK(out.exit_code == 0);
}
