#include "doctest.h"
#include "itp/checker.hpp"
#include "itp/eval.hpp"
#include "itp/guards.hpp"
#include "itp/printer.hpp"
#include "itp/prover.hpp"

#include <sstream>

using namespace itp;

namespace {

Formula p_of(const LinTerm& t) { return pred_app("p", {t}); }

Formula example3_A() {
  return f_and(eq0(LinTerm::sym("c", Int(2)) - LinTerm("y")), p_of(LinTerm("c")));
}
Formula example3_B() {
  return f_and(eq0(LinTerm::sym("d", Int(2)) - LinTerm("y")), f_not(p_of(LinTerm("d"))));
}

Signature sig_cyp() {
  Signature sig;
  sig.declare_const("c", Sort::IntS);
  sig.declare_const("d", Sort::IntS);
  sig.declare_const("y", Sort::IntS);
  sig.declare_pred("p", {{Sort::IntS}});
  return sig;
}

ProveResult prove_ab(const Formula& a, const Formula& b, Signature sig,
                     StrategyConfig cfg = {}) {
  SymbolGen gen;
  Sequent root = init_sequent(a, b, sig, gen);
  return prove(root, sig, cfg, gen, f_and(a, b));
}

Formula interpolant_of(const Formula& a, const Formula& b, Signature sig,
                       StrategyConfig cfg = {}) {
  SymbolGen gen;
  Sequent root = init_sequent(a, b, sig, gen);
  ProveResult r = prove(root, sig, cfg, gen, f_and(a, b));
  REQUIRE(r.status == ProveResult::Status::Closed);
  return extract_interpolant(*r.proof, gen);
}

}  // namespace

TEST_CASE("init_sequent: members and labels") {
  Signature sig = sig_cyp();
  SymbolGen gen;
  Sequent s = init_sequent(example3_A(), example3_B(), sig, gen);
  REQUIRE(s.ant.size() == 4);  // A, B, PC_p twice
  CHECK(s.ant[0].f == example3_A());
  CHECK(s.ant[0].lab == Label::L);
  CHECK(s.ant[1].f == example3_B());
  CHECK(s.ant[1].lab == Label::R);
  CHECK(s.ant[2].axiom == int(AxiomKind::PC));
  CHECK(s.ant[2].lab == Label::L);
  CHECK(s.ant[3].axiom == int(AxiomKind::PC));
  CHECK(s.ant[3].lab == Label::R);
  CHECK(s.suc.empty());

  Signature none;
  SymbolGen g2;
  Sequent t = init_sequent(f_false(), f_true(), none, g2);
  CHECK(t.ant.size() == 2);
}

TEST_CASE("init_sequent: function problems carry FC axioms per side") {
  Signature sig;
  sig.declare_const("a", Sort::IntS);
  sig.declare_const("b", Sort::IntS);
  sig.declare_const("c", Sort::IntS);
  sig.declare_const("d", Sort::IntS);
  sig.declare_fun("f", {{Sort::IntS}, Sort::IntS});
  FunApp f2("f", {LinTerm(Int(2))});
  FunApp fa("f", {LinTerm("a") + LinTerm(Int(1))});
  FunApp fb("f", {LinTerm("b")});
  FunApp fc("f", {LinTerm("c")});
  Formula a = mk_and({eq0(LinTerm("b") - LinTerm(f2)), eq0(LinTerm(fa) - LinTerm("c")),
                      eq0(LinTerm("d") - LinTerm(Int(1)))});
  Formula b = mk_and({eq0(LinTerm("a") - LinTerm(Int(1))),
                      eq0(LinTerm(fb) - LinTerm(fc) - LinTerm("d"))});
  SymbolGen gen;
  Sequent s = init_sequent(a, b, sig, gen);
  REQUIRE(s.ant.size() == 4);
  CHECK_FALSE(has_fun_apps(s.ant[0].f));  // A_Rel
  CHECK_FALSE(has_fun_apps(s.ant[1].f));  // B_Rel
  CHECK(s.ant[2].axiom == int(AxiomKind::FC));
  CHECK(s.ant[2].lab == Label::L);
  CHECK(s.ant[3].lab == Label::R);
}

TEST_CASE("close rules carry the four interpolants") {
  Sequent s;
  s.ant.push_back({p_of(LinTerm("d")), Label::L, -1, "", 1});
  s.suc.push_back({p_of(LinTerm("d")), Label::R, -1, "", 2});
  auto lr = apply_prop_rule("CLOSE-LR", s, 0, 0);
  CHECK(lr.comb == Comb::Leaf);
  CHECK(lr.leaf_itp == p_of(LinTerm("d")));

  s.suc[0].lab = Label::L;
  auto ll = apply_prop_rule("CLOSE-LL", s, 0, 0);
  CHECK(ll.leaf_itp.is_false());
  CHECK_THROWS_AS(apply_prop_rule("CLOSE-RR", s, 0, 0), SchemaMismatch);

  s.ant[0].lab = Label::R;
  auto rl = apply_prop_rule("CLOSE-RL", s, 0, 0);
  CHECK(rl.leaf_itp == f_not(p_of(LinTerm("d"))));
  s.suc[0].lab = Label::R;
  auto rr = apply_prop_rule("CLOSE-RR", s, 0, 0);
  CHECK(rr.leaf_itp.is_true());
}

TEST_CASE("or-left splits with label-dependent combinators") {
  Sequent s;
  Formula f = f_or(p_of(LinTerm("a")), p_of(LinTerm("b")));
  s.ant.push_back({f, Label::L, -1, "", 1});
  auto r = apply_prop_rule("OR-LEFT-L", s, 0, SIZE_MAX);
  REQUIRE(r.premises.size() == 2);
  CHECK(r.comb == Comb::OrFold);
  CHECK(r.premises[0].ant[0].f == p_of(LinTerm("a")));
  CHECK_THROWS_AS(apply_prop_rule("OR-LEFT-R", s, 0, SIZE_MAX), SchemaMismatch);
}

TEST_CASE("quantifier rules: instantiation, freshness, guard rewrite") {
  SymbolGen gen;
  Sequent s;
  Formula all = forall("x", p_of(LinTerm("x")));
  s.ant.push_back({all, Label::L, -1, "", 1});
  s.ant.push_back({eq0(LinTerm("c") - LinTerm("d")), Label::L, -1, "", 2});
  auto r = apply_quant_rule("ALL-LEFT-L", s, true, 0, LinTerm("e"), gen);
  REQUIRE(r.premises.size() == 1);
  CHECK(r.premises[0].ant[0].f == p_of(LinTerm("e")));
  CHECK(r.comb == Comb::QuantUni);
  // e does not occur in the L-part: it is generalized
  CHECK(r.quant_syms == std::vector<std::string>{"e"});

  // instantiating with an L-occurring constant adds no quantifier
  auto r2 = apply_quant_rule("ALL-LEFT-L", s, true, 0, LinTerm("c"), gen);
  CHECK(r2.quant_syms.empty());

  Sequent t;
  t.ant.push_back({exists("x", p_of(LinTerm("x"))), Label::R, -1, "", 1});
  auto r3 = apply_quant_rule("EX-LEFT", t, true, 0, std::nullopt, gen);
  REQUIRE(r3.premises.size() == 1);
  CHECK(r3.premises[0].ant[0].f.kind() == FKind::Pred);

  Sequent u;
  Formula guarded = forall("x", f_or(f_not(eq0(LinTerm::sym("x", Int(-2)) + LinTerm("y"))),
                                     p_of(LinTerm("x"))));
  u.ant.push_back({guarded, Label::L, -1, "", 1});
  auto r4 = apply_quant_rule("ALL-LEFT-GRD", u, true, 0, std::nullopt, gen);
  REQUIRE(r4.premises.size() == 1);
  const Formula& prem = r4.premises[0].ant[0].f;
  REQUIRE(prem.kind() == FKind::Or);
  CHECK(prem.kid(0) == f_not(divides(Int(2), LinTerm("y"))));

  Sequent v;
  v.ant.push_back({forall("x", p_of(LinTerm("x"))), Label::L, -1, "", 1});
  CHECK_THROWS_AS(apply_quant_rule("ALL-LEFT-GRD", v, true, 0, std::nullopt, gen), NonGuarded);
}

TEST_CASE("prove: the predicate parity example end to end") {
  ProveResult r = prove_ab(example3_A(), example3_B(), sig_cyp());
  REQUIRE(r.status == ProveResult::Status::Closed);
  SymbolGen gen;
  gen.next = 500;
  Formula i = extract_interpolant(*r.proof, gen);
  // I = forall x. (y - 2x != 0 \/ p(x)) up to literal normalization
  BoundedEval ev(Int(6), 10000000);
  Formula expected = forall("x", f_or(f_not(eq0(LinTerm("y") - LinTerm::sym("x", Int(2)))),
                                      p_of(LinTerm("x"))));
  CHECK(ev.equivalent(i, expected));
  CHECK(classify_fragment(i) == Frag::PAID_UP);
  CHECK(r.proof->concl.interpolant_slot.has_value());

  std::string why;
  CHECK(validate_proof(*r.proof, &why));
}

TEST_CASE("prove: complementary shared literal") {
  Signature sig;
  sig.declare_const("c", Sort::IntS);
  sig.declare_pred("p", {{Sort::IntS}});
  SymbolGen gen;
  Sequent root = init_sequent(p_of(LinTerm("c")), f_not(p_of(LinTerm("c"))), sig, gen);
  ProveResult r = prove(root, sig, {}, gen);
  REQUIRE(r.status == ProveResult::Status::Closed);
  Formula i = extract_interpolant(*r.proof, gen);
  CHECK(i == p_of(LinTerm("c")));
}

TEST_CASE("prove: false/true") {
  Signature sig;
  ProveResult r = prove_ab(f_false(), f_true(), sig);
  REQUIRE(r.status == ProveResult::Status::Closed);
  SymbolGen gen;
  CHECK(extract_interpolant(*r.proof, gen).is_false());
}

TEST_CASE("prove: parity interpolant is a divisibility fact") {
  Signature sig;
  sig.declare_const("a", Sort::IntS);
  sig.declare_const("b", Sort::IntS);
  sig.declare_const("c", Sort::IntS);
  Formula a = eq0(LinTerm("a") - LinTerm::sym("b", Int(2)));
  Formula b = eq0(LinTerm("a") - LinTerm::sym("c", Int(2)) - LinTerm(Int(1)));
  // brute force: every model of A has even a, every model of B has odd a
  {
    BoundedEval ev(Int(6));
    auto m = ev.search(a);
    REQUIRE(m);
    CHECK(m->consts["a"] % 2 == 0);
    auto mb = ev.search(b);
    REQUIRE(mb);
    CHECK((mb->consts["a"] % 2 != 0));
    CHECK_FALSE(ev.search(f_and(a, b)));
  }
  Formula i = interpolant_of(a, b, sig);
  BoundedEval ev(Int(6), 10000000);
  CHECK(ev.equivalent(i, divides(Int(2), LinTerm("a"))));
}

TEST_CASE("prove: satisfiable input yields a witness") {
  Signature sig;
  sig.declare_const("c", Sort::IntS);
  sig.declare_const("d", Sort::IntS);
  sig.declare_pred("p", {{Sort::IntS}});
  ProveResult r = prove_ab(p_of(LinTerm("c")), f_not(p_of(LinTerm("d"))), sig);
  CHECK(r.status == ProveResult::Status::Satisfiable);
}

TEST_CASE("prove: pinched interval with parity closes by fair strengthening") {
  // c <= 3, c >= 2, c even (via 2d - c = 0) forces c = 2; B denies it
  Signature sig;
  sig.declare_const("c", Sort::IntS);
  sig.declare_const("d", Sort::IntS);
  Formula a = mk_and({leq0(LinTerm("c") - LinTerm(Int(3))),
                      leq0(-LinTerm("c") + LinTerm(Int(2))),
                      eq0(LinTerm::sym("d", Int(2)) - LinTerm("c"))});
  Formula b = f_not(eq0(LinTerm("c") - LinTerm(Int(2))));
  {
    BoundedEval ev(Int(6));
    CHECK_FALSE(ev.search(f_and(a, b)));
  }
  ProveResult r = prove_ab(a, b, sig);
  REQUIRE(r.status == ProveResult::Status::Closed);
  SymbolGen gen;
  gen.next = 900;
  Formula i = extract_interpolant(*r.proof, gen);
  BoundedEval ev(Int(6), 10000000);
  // A pins c = 2
  CHECK(ev.equivalent(f_and(i, b), f_false()));
  CHECK(r.stats.max_strengthen >= 1);
}

TEST_CASE("prove: inequality chain without parity") {
  Signature sig;
  sig.declare_const("c", Sort::IntS);
  Formula a = leq0(LinTerm("c"));                      // c <= 0
  Formula b = leq0(-LinTerm("c") + LinTerm(Int(1)));   // c >= 1
  Formula i = interpolant_of(a, b, sig);
  BoundedEval ev(Int(6));
  CHECK(ev.equivalent(i, leq0(LinTerm("c"))));
}

TEST_CASE("prove: deterministic traces") {
  auto run = [&]() {
    Signature sig = sig_cyp();
    SymbolGen gen;
    Sequent root = init_sequent(example3_A(), example3_B(), sig, gen);
    ProveResult r = prove(root, sig, {}, gen, f_and(example3_A(), example3_B()));
    REQUIRE(r.status == ProveResult::Status::Closed);
    std::ostringstream os;
    write_trace(*r.proof, os);
    return os.str();
  };
  std::string t1 = run();
  std::string t2 = run();
  CHECK(t1 == t2);
  CHECK(t1.find("(node 0 ") == 0);
  CHECK(t1.find("ALL-LEFT-L+") != std::string::npos);
  CHECK(t1.find("CLOSE-EQ-RIGHT") != std::string::npos);
}

TEST_CASE("prove: budget exhaustion reports unknown") {
  StrategyConfig cfg;
  cfg.budget_nodes = 3;
  ProveResult r = prove_ab(example3_A(), example3_B(), sig_cyp(), cfg);
  CHECK(r.status == ProveResult::Status::Unknown);
  CHECK(r.reason.find("Budget") != std::string::npos);
}

TEST_CASE("interpolation conditions hold for every closed result") {
  struct Case {
    Formula a, b;
    Signature sig;
  };
  std::vector<Case> cases;
  {
    cases.push_back({example3_A(), example3_B(), sig_cyp()});
    Signature s2;
    s2.declare_const("a", Sort::IntS);
    s2.declare_const("b", Sort::IntS);
    s2.declare_const("c", Sort::IntS);
    cases.push_back({eq0(LinTerm("a") - LinTerm::sym("b", Int(2))),
                     eq0(LinTerm("a") - LinTerm::sym("c", Int(2)) - LinTerm(Int(1))), s2});
    Signature s3;
    s3.declare_const("c", Sort::IntS);
    cases.push_back({leq0(LinTerm("c")), leq0(-LinTerm("c") + LinTerm(Int(1))), s3});
  }
  for (auto& cse : cases) {
    SymbolGen gen;
    Sequent root = init_sequent(cse.a, cse.b, cse.sig, gen);
    ProveResult r = prove(root, cse.sig, {}, gen, f_and(cse.a, cse.b));
    REQUIRE(r.status == ProveResult::Status::Closed);
    Formula i = extract_interpolant(*r.proof, gen);
    CheckReport rep = check_interpolant(cse.a, cse.b, i, cse.sig, {});
    CHECK(rep.verdict == CheckReport::Verdict::Verified);
  }
}

TEST_CASE("free strategy still closes the guarded examples") {
  StrategyConfig cfg;
  cfg.restricted = false;
  ProveResult r = prove_ab(example3_A(), example3_B(), sig_cyp(), cfg);
  CHECK(r.status == ProveResult::Status::Closed);
}
