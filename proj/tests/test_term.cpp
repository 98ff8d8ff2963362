#include "doctest.h"
#include "itp/term.hpp"

using namespace itp;

TEST_CASE("like terms collect and zero coefficients drop") {
  // 2c - y + 0*d
  LinTerm t = LinTerm::sym("c", Int(2)) - LinTerm("y") + LinTerm::sym("d", Int(0));
  CHECK(t.const_part() == 0);
  CHECK(t.coeff_of("c") == 2);
  CHECK(t.coeff_of("y") == -1);
  CHECK(t.coeff_of("d") == 0);
  CHECK(t.coeffs().size() == 2);

  // c + c + 1
  LinTerm u = LinTerm("c") + LinTerm("c") + LinTerm(Int(1));
  CHECK(u.const_part() == 1);
  CHECK(u.coeff_of("c") == 2);

  // a + 1 (the argument of f in b = f(2) /\ f(a+1) = c)
  LinTerm v = LinTerm("a") + LinTerm(Int(1));
  CHECK(v.const_part() == 1);
  CHECK(v.coeff_of("a") == 1);
}

TEST_CASE("structural equality is polynomial equality") {
  LinTerm a = LinTerm("x") + LinTerm("y") - LinTerm("x");
  CHECK(a == LinTerm("y"));
  LinTerm b = (LinTerm("x") + LinTerm(Int(3))) * Int(2);
  LinTerm c = LinTerm::sym("x", Int(2)) + LinTerm(Int(6));
  CHECK(b == c);
  CHECK_FALSE(b == a);
}

TEST_CASE("substitution reaches function arguments") {
  FunApp f("f", {LinTerm("x") + LinTerm(Int(1))});
  LinTerm t = LinTerm(f) * Int(2) + LinTerm("x");
  LinTerm r = t.subst("x", LinTerm("c") - LinTerm(Int(1)));
  FunApp fc("f", {LinTerm("c")});
  LinTerm expected = LinTerm(fc) * Int(2) + LinTerm("c") - LinTerm(Int(1));
  CHECK(r == expected);
}

TEST_CASE("identity substitution") {
  LinTerm t = LinTerm::sym("x", Int(3)) + LinTerm("y");
  CHECK(t.subst("x", LinTerm("x")) == t);
}

TEST_CASE("symbol ordering: user names before generated ones") {
  CHECK(sym_less("a", "$1"));
  CHECK(sym_less("$1", "$2"));
  CHECK(sym_less("$2", "$10"));
  CHECK(sym_less("$3", "?1"));
  CHECK_FALSE(sym_less("$1", "z"));
}

TEST_CASE("floor division") {
  CHECK(floor_div(Int(7), Int(2)) == 3);
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(floor_div(Int(-8), Int(2)) == -4);
}
