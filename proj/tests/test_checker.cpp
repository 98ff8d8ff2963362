#include "doctest.h"
#include "itp/checker.hpp"
#include "itp/guards.hpp"

using namespace itp;

namespace {

Formula p_of(const LinTerm& t) { return pred_app("p", {t}); }

Formula example3_A() {
  return f_and(eq0(LinTerm::sym("c", Int(2)) - LinTerm("y")), p_of(LinTerm("c")));
}
Formula example3_B() {
  return f_and(eq0(LinTerm::sym("d", Int(2)) - LinTerm("y")), f_not(p_of(LinTerm("d"))));
}
Formula example3_I() {
  return forall("x", f_or(f_not(eq0(LinTerm("y") - LinTerm::sym("x", Int(2)))),
                          p_of(LinTerm("x"))));
}

Signature sig_cyp() {
  Signature sig;
  sig.declare_const("c", Sort::IntS);
  sig.declare_const("d", Sort::IntS);
  sig.declare_const("y", Sort::IntS);
  sig.declare_pred("p", {{Sort::IntS}});
  return sig;
}

}  // namespace

TEST_CASE("check: the guarded universal interpolant verifies") {
  CheckReport rep = check_interpolant(example3_A(), example3_B(), example3_I(), sig_cyp(), {});
  CHECK(rep.cond_left == CheckReport::Cond::Proved);
  CHECK(rep.cond_right == CheckReport::Cond::Proved);
  CHECK(rep.vocab_pass);
  CHECK(rep.verdict == CheckReport::Verdict::Verified);
}

TEST_CASE("check: strongest (existential) interpolant also verifies") {
  Formula is = exists("x", f_and(eq0(LinTerm::sym("x", Int(2)) - LinTerm("y")),
                                 p_of(LinTerm("x"))));
  CheckReport rep = check_interpolant(example3_A(), example3_B(), is, sig_cyp(), {});
  CHECK(rep.verdict == CheckReport::Verdict::Verified);
}

TEST_CASE("check: div-form interpolants verify through expansion") {
  Formula idiv = f_or(f_not(divides(Int(2), LinTerm("y"))),
                      p_of(LinTerm(FunApp::div(LinTerm("y"), Int(2)))));
  CheckReport rep = check_interpolant(example3_A(), example3_B(), idiv, sig_cyp(), {});
  CHECK(rep.verdict == CheckReport::Verdict::Verified);
}

TEST_CASE("check: local symbol leak is rejected with the offender named") {
  Formula bad = p_of(LinTerm("c"));  // c occurs only in A
  CheckReport rep = check_interpolant(example3_A(), example3_B(), bad, sig_cyp(), {});
  CHECK_FALSE(rep.vocab_pass);
  REQUIRE(rep.vocab_offenders.size() == 1);
  CHECK(rep.vocab_offenders[0] == "c");
  CHECK(rep.verdict == CheckReport::Verdict::Rejected);
}

TEST_CASE("check: a non-implied candidate is refuted") {
  // candidate false: A does not imply false
  CheckReport rep = check_interpolant(example3_A(), example3_B(), f_false(), sig_cyp(), {});
  CHECK(rep.cond_left == CheckReport::Cond::Refuted);
  CHECK(rep.verdict == CheckReport::Verdict::Rejected);
  CHECK(rep.refutation.has_value());
}

TEST_CASE("check: candidate that does not contradict B is refuted") {
  CheckReport rep = check_interpolant(example3_A(), example3_B(),
                                      divides(Int(2), LinTerm("y")), sig_cyp(), {});
  // 2 | y holds in A-models, but does not rule B out
  CHECK(rep.cond_left == CheckReport::Cond::Proved);
  CHECK(rep.cond_right == CheckReport::Cond::Refuted);
  CHECK(rep.verdict == CheckReport::Verdict::Rejected);
}
