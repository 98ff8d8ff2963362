#include "itp/prover.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <sstream>

#include "itp/guards.hpp"
#include "itp/printer.hpp"
#include "itp/theory.hpp"

namespace itp {

namespace {

bool formula_has_unguarded_fun_quant(const Formula& f) {
  switch (f.kind()) {
    case FKind::Forall:
    case FKind::Exists: {
      bool guarded = f.kind() == FKind::Forall ? match_guarded_forall(f).has_value()
                                               : (match_guarded_exists(f).has_value() ||
                                                  match_rel_exists(f).has_value());
      if (!guarded && has_fun_apps(f.body())) return true;
      return formula_has_unguarded_fun_quant(f.body());
    }
    default:
      for (const auto& k : f.kids())
        if (formula_has_unguarded_fun_quant(k)) return true;
      return false;
  }
}

}  // namespace

Sequent init_sequent(const Formula& a, const Formula& b, Signature& sig, SymbolGen& gen) {
  Sequent s;
  long id = 0;
  auto add_side = [&](const Formula& f, Label lab) {
    Formula g = f;
    if (has_fun_apps(g)) {
      if (formula_has_unguarded_fun_quant(nnf(g)))
        throw QuantifiedFunctionArgs(
            "functions under unguarded quantifiers are not supported");
      g = rel_encode(nnf(g), gen);
    }
    s.ant.push_back({g, lab, -1, "", ++id});
  };
  add_side(a, Label::L);
  add_side(b, Label::R);

  SymbolSet fa = free_symbols(a), fb = free_symbols(b);
  for (const auto& [p, decl] : sig.preds) {
    if (fa.preds.count(p))
      s.ant.push_back({pc_axiom(p, decl.args.size(), gen), Label::L,
                       int(AxiomKind::PC), p, ++id});
    if (fb.preds.count(p))
      s.ant.push_back({pc_axiom(p, decl.args.size(), gen), Label::R,
                       int(AxiomKind::PC), p, ++id});
  }
  for (const auto& [f, decl] : sig.funs) {
    bool arr = f == "select" || f == "store";
    if (fa.funs.count(f) && !arr)
      s.ant.push_back({fc_axiom(f, decl.args.size(), gen), Label::L,
                       int(AxiomKind::FC), f, ++id});
    if (fb.funs.count(f) && !arr)
      s.ant.push_back({fc_axiom(f, decl.args.size(), gen), Label::R,
                       int(AxiomKind::FC), f, ++id});
  }
  if (sig.has_arrays) {
    bool arr_a = fa.funs.count("select") || fa.funs.count("store");
    bool arr_b = fb.funs.count("select") || fb.funs.count("store");
    for (const auto& [c, so] : sig.consts) {
      if (so != Sort::ArrayS) continue;
      if (fa.consts.count(c)) arr_a = true;
      if (fb.consts.count(c)) arr_b = true;
    }
    if (arr_a) {
      auto ax = array_axioms(gen);
      // select/store graph atoms need functional consistency as well
      s.ant.push_back({ax[0], Label::L, int(AxiomKind::AR1), "", ++id});
      s.ant.push_back({ax[1], Label::L, int(AxiomKind::AR2), "", ++id});
      s.ant.push_back({ax[2], Label::L, int(AxiomKind::AR3), "", ++id});
      s.ant.push_back({fc_axiom("select", 2, gen), Label::L, int(AxiomKind::FC), "select", ++id});
      s.ant.push_back({fc_axiom("store", 3, gen), Label::L, int(AxiomKind::FC), "store", ++id});
    }
    if (arr_b) {
      auto ax = array_axioms(gen);
      s.ant.push_back({ax[0], Label::R, int(AxiomKind::AR1), "", ++id});
      s.ant.push_back({ax[1], Label::R, int(AxiomKind::AR2), "", ++id});
      s.ant.push_back({ax[2], Label::R, int(AxiomKind::AR3), "", ++id});
      s.ant.push_back({fc_axiom("select", 2, gen), Label::R, int(AxiomKind::FC), "select", ++id});
      s.ant.push_back({fc_axiom("store", 3, gen), Label::R, int(AxiomKind::FC), "store", ++id});
    }
  }
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Goal {
  Sequent s;
  std::set<std::string> used;  // instantiation dedup, inherited along the branch
  SolvedEqSystem sys;
  bool arith_dirty = true;
  int depth = 0;
};

enum class FailKind { None, Dead, Sat, Budget, Diag };

class Engine {
 public:
  Engine(const Signature& sig, const StrategyConfig& cfg, SymbolGen& gen,
         std::optional<Formula> probe)
      : sig_(sig), cfg_(cfg), gen_(gen), probe_(std::move(probe)) {
    if (cfg_.timeout_ms > 0) deadline_ = Clock::now() + std::chrono::milliseconds(cfg_.timeout_ms);
  }

  ProveResult run(const Sequent& root) {
    Goal g;
    g.s = root;
    for (const auto& lf : root.ant) next_id_ = std::max(next_id_, lf.id + 1);
    for (const auto& lf : root.suc) next_id_ = std::max(next_id_, lf.id + 1);

    ProveResult res;
    auto proof = solve(std::move(g));
    res.stats = stats_;
    if (proof) {
      res.status = ProveResult::Status::Closed;
      res.proof = std::move(proof);
      return res;
    }
    if (fail_ == FailKind::Sat) {
      res.status = ProveResult::Status::Satisfiable;
      res.witness = witness_;
      return res;
    }
    res.status = ProveResult::Status::Unknown;
    res.reason = reason_.empty() ? "proof search exhausted" : reason_;
    return res;
  }

 private:
  const Signature& sig_;
  StrategyConfig cfg_;
  SymbolGen& gen_;
  std::optional<Formula> probe_;
  std::optional<Clock::time_point> deadline_;

  long next_node_ = 0;
  long next_id_ = 1;
  FailKind fail_ = FailKind::None;
  std::string reason_;
  Model witness_;
  bool probe_done_ = false;
  ProveStats stats_;

  long fresh_id() { return next_id_++; }

  bool over_budget() {
    if (next_node_ > cfg_.budget_nodes) {
      fail_ = FailKind::Budget;
      reason_ = "BudgetExceeded: node budget";
      return true;
    }
    if (deadline_ && Clock::now() > *deadline_) {
      fail_ = FailKind::Budget;
      reason_ = "BudgetExceeded: timeout";
      return true;
    }
    return false;
  }

  std::unique_ptr<ProofNode> mk_node(Sequent concl, RuleInfo rule) {
    auto n = std::make_unique<ProofNode>();
    n->id = next_node_++;
    stats_.nodes = next_node_;
    n->concl = std::move(concl);
    n->rule = std::move(rule);
    return n;
  }

  using Chain = std::vector<std::pair<std::unique_ptr<ProofNode>, int>>;

  // chain of unary steps: nodes created in order, each wrapping the next
  std::unique_ptr<ProofNode> wrap(std::vector<std::unique_ptr<ProofNode>>& chain,
                                  std::unique_ptr<ProofNode> inner) {
    while (!chain.empty()) {
      auto n = std::move(chain.back());
      chain.pop_back();
      n->prem.push_back(std::move(inner));
      inner = std::move(n);
    }
    return inner;
  }

  std::set<std::string, SymLess> local_syms(const Sequent& s,
                                            const std::vector<LinTerm>& terms, Label side) {
    std::set<std::string, SymLess> in_terms;
    for (const auto& t : terms) t.collect_symbols(in_terms);
    auto voc = s.vocab(side);
    std::set<std::string, SymLess> out;
    for (const auto& c : in_terms)
      if (!voc.count(c)) out.insert(c);
    return out;
  }

  // contribution prefix: constants of u that are L-local in s
  std::vector<std::string> l_locals_in(const Sequent& s, const LinTerm& u) {
    auto vl = s.vocab(Label::L);
    auto vr = s.vocab(Label::R);
    std::set<std::string, SymLess> syms;
    u.collect_symbols(syms);
    std::vector<std::string> out;
    for (const auto& c : syms)
      if (vl.count(c) && !vr.count(c)) out.push_back(c);
    return out;
  }

  Formula wrap_exists_locals(const LinTerm& u, bool as_eq,
                             const std::vector<std::string>& locals) {
    LinTerm v = u;
    Formula body;
    std::vector<std::string> vars;
    for (const auto& c : locals) {
      std::string x = gen_.fresh_var();
      v = v.subst(c, LinTerm(x));
      vars.push_back(x);
    }
    body = as_eq ? eq0(v) : leq0(v);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = exists(*it, body);
    return body;
  }

  // ---------- leaf constructors ----------

  std::unique_ptr<ProofNode> leaf(const Goal& g, std::string name, Formula itp) {
    RuleInfo ri;
    ri.name = std::move(name);
    ri.comb = Comb::Leaf;
    ri.leaf_itp = std::move(itp);
    return mk_node(g.s, std::move(ri));
  }

  std::unique_ptr<ProofNode> close_eq_left(const Goal& g, const EqContradiction& contra) {
    LinTerm u = canon_eq_term(contra.apart);
    auto locals = l_locals_in(g.s, u);
    if (!contra.gcd_based && !locals.empty()) {
      fail_ = FailKind::Diag;
      reason_ = "diagnostic: nonempty exists-prefix on CLOSE-EQ-LEFT";
      return nullptr;
    }
    Formula itp = wrap_exists_locals(u, true, locals);
    RuleInfo ri;
    ri.name = "CLOSE-EQ-LEFT";
    ri.comb = Comb::Leaf;
    ri.leaf_itp = itp;
    ri.inst_terms = {contra.lit, contra.apart};
    return mk_node(g.s, std::move(ri));
  }

  // ---------- close scan ----------

  std::unique_ptr<ProofNode> try_close(const Goal& g) {
    auto close_itp = [&](Label d, Label e, const Formula& f) -> std::pair<const char*, Formula> {
      if (d == Label::L && e == Label::L) return {"CLOSE-LL", f_false()};
      if (d == Label::R && e == Label::R) return {"CLOSE-RR", f_true()};
      if (d == Label::L && e == Label::R) return {"CLOSE-LR", f};
      return {"CLOSE-RL", f_not(f)};
    };
    for (const auto& la : g.s.ant) {
      if (la.axiom >= 0) continue;
      for (const auto& ls : g.s.suc)
        if (la.f == ls.f) {
          auto [nm, itp] = close_itp(la.lab, ls.lab, la.f);
          return leaf(g, nm, itp);
        }
    }
    for (const auto& aa : g.s.ant_atoms) {
      for (const auto& sa : g.s.suc_atoms)
        if (aa.pred == sa.pred && aa.graph == sa.graph && aa.args == sa.args) {
          auto [nm, itp] = close_itp(aa.lab, sa.lab, aa.to_formula());
          return leaf(g, nm, itp);
        }
      for (const auto& ls : g.s.suc)
        if (ls.f.kind() == FKind::Pred && aa.to_formula() == ls.f) {
          auto [nm, itp] = close_itp(aa.lab, ls.lab, ls.f);
          return leaf(g, nm, itp);
        }
    }
    return nullptr;
  }

  // ---------- structural steps ----------

  struct Unary {
    RuleInfo rule;
    bool applied = false;
  };

  void push_ant(Goal& g, size_t at, Formula f, Label lab) {
    if (f.is_true()) return;
    LabelledFormula lf{std::move(f), lab, -1, "", fresh_id()};
    g.s.ant.insert(g.s.ant.begin() + at, std::move(lf));
  }
  void push_suc(Goal& g, size_t at, Formula f, Label lab) {
    if (f.is_false()) return;
    LabelledFormula lf{std::move(f), lab, -1, "", fresh_id()};
    g.s.suc.insert(g.s.suc.begin() + at, std::move(lf));
  }

  void add_eq_row(Goal& g, const LinTerm& t, Label lab, long id) {
    g.s.eqs.push_back({t, true, lab == Label::L ? t : LinTerm(), id, 0});
    g.arith_dirty = true;
  }
  void add_ineq_row(Goal& g, const LinTerm& t, Label lab, long id) {
    g.s.ineqs.push_back({t, false, lab == Label::L ? t : LinTerm(), id, 0});
    g.arith_dirty = true;
  }
  void add_ineq_lit(Goal& g, AnnLit l) {
    g.s.ineqs.push_back(std::move(l));
    g.arith_dirty = true;
  }

  // returns: 0 = nothing to do, 1 = unary applied (continue), 2 = branch (node set),
  // 3 = leaf (node set), -1 = failure
  int structural_step(Goal& g, std::vector<std::unique_ptr<ProofNode>>& chain,
                      std::unique_ptr<ProofNode>& node) {
    // antecedent first, leftmost principal formula first
    for (size_t i = 0; i < g.s.ant.size(); ++i) {
      LabelledFormula lf = g.s.ant[i];
      if (lf.axiom >= 0) continue;
      const Formula& f = lf.f;
      Label d = lf.lab;
      auto snapshot = [&]() { return g.s; };
      auto unary = [&](const char* name, auto&& mutate, std::string fresh = "") {
        RuleInfo ri;
        ri.name = name;
        ri.comb = Comb::Id;
        ri.principal = lf.id;
        ri.d = d;
        ri.fresh = std::move(fresh);
        auto n = mk_node(snapshot(), std::move(ri));
        g.s.ant.erase(g.s.ant.begin() + i);
        mutate();
        chain.push_back(std::move(n));
        return 1;
      };

      if (f.is_true()) {
        g.s.ant.erase(g.s.ant.begin() + i);
        return 1;
      }
      if (f.is_false()) {
        node = leaf(g, "CLOSE-FALSE-LEFT", d == Label::L ? f_false() : f_true());
        return 3;
      }
      switch (f.kind()) {
        case FKind::EqZero:
          return unary("IPI-LEFT", [&] { add_eq_row(g, f.term(), d, lf.id); });
        case FKind::LeqZero:
          return unary("IPI-LEFT", [&] { add_ineq_row(g, f.term(), d, lf.id); });
        case FKind::Divides: {
          std::string c = gen_.fresh_const();
          return unary(
              "DIV-LEFT",
              [&] { add_eq_row(g, LinTerm::sym(c, f.modulus()) - f.term(), d, lf.id); }, c);
        }
        case FKind::Pred:
          return unary("MOVE-ATOM-LEFT", [&] {
            g.s.ant_atoms.push_back({f.pred(), f.graph(), f.args(), d, lf.id});
          });
        case FKind::Not: {
          const Formula& k = f.kid(0);
          switch (k.kind()) {
            case FKind::EqZero: {
              // SPLIT: not (t = 0)  ->  t+1 <= 0  |  -t+1 <= 0
              RuleInfo ri;
              ri.name = d == Label::L ? "SPLIT-NEQ-L" : "SPLIT-NEQ-R";
              ri.comb = d == Label::L ? Comb::OrFold : Comb::AndFold;
              ri.principal = lf.id;
              ri.d = d;
              Sequent concl = g.s;
              Goal g1 = g, g2 = g;
              g1.s.ant.erase(g1.s.ant.begin() + i);
              g2.s.ant.erase(g2.s.ant.begin() + i);
              LinTerm lo = k.term() + LinTerm(Int(1));
              LinTerm hi = -k.term() + LinTerm(Int(1));
              add_ineq_row(g1, lo, d, lf.id);
              add_ineq_row(g2, hi, d, lf.id);
              auto p1 = solve(std::move(g1));
              if (!p1) return -1;
              auto p2 = solve(std::move(g2));
              if (!p2) return -1;
              node = mk_node(std::move(concl), std::move(ri));
              node->prem.push_back(std::move(p1));
              node->prem.push_back(std::move(p2));
              return 2;
            }
            case FKind::LeqZero:
              return unary("NOT-LEFT-INEQ",
                           [&] { add_ineq_row(g, -k.term() + LinTerm(Int(1)), d, lf.id); });
            case FKind::Divides: {
              std::string c = gen_.fresh_const();
              return unary(
                  "DIV-NEG-LEFT",
                  [&] {
                    LinTerm ax = LinTerm::sym(c, k.modulus());
                    add_ineq_row(g, ax - k.term() + LinTerm(Int(1)), d, lf.id);
                    add_ineq_row(g, k.term() - ax - LinTerm(k.modulus()) + LinTerm(Int(1)), d,
                                 lf.id);
                  },
                  c);
            }
            default:
              return unary("NOT-LEFT", [&] { push_suc(g, g.s.suc.size(), k, d); });
          }
        }
        case FKind::And:
          return unary("AND-LEFT", [&] {
            push_ant(g, i, f.kid(0), d);
            push_ant(g, i + 1, f.kid(1), d);
          });
        case FKind::Or: {
          RuleInfo ri;
          ri.name = d == Label::L ? "OR-LEFT-L" : "OR-LEFT-R";
          ri.comb = d == Label::L ? Comb::OrFold : Comb::AndFold;
          ri.principal = lf.id;
          ri.d = d;
          Sequent concl = g.s;
          Goal g1 = g, g2 = g;
          g1.s.ant.erase(g1.s.ant.begin() + i);
          g2.s.ant.erase(g2.s.ant.begin() + i);
          push_ant(g1, i, f.kid(0), d);
          push_ant(g2, i, f.kid(1), d);
          auto p1 = solve(std::move(g1));
          if (!p1) return -1;
          auto p2 = solve(std::move(g2));
          if (!p2) return -1;
          node = mk_node(std::move(concl), std::move(ri));
          node->prem.push_back(std::move(p1));
          node->prem.push_back(std::move(p2));
          return 2;
        }
        case FKind::Exists: {
          std::string c = gen_.fresh_const();
          return unary(
              "EX-LEFT", [&] { push_ant(g, i, substitute(f.body(), f.var(), LinTerm(c)), d); },
              c);
        }
        case FKind::Forall: {
          if (auto gd = match_guarded_forall(f)) {
            Int alpha = gd->alpha < 0 ? Int(-gd->alpha) : gd->alpha;
            LinTerm guard = LinTerm::sym(gd->var, gd->alpha) + gd->t;
            Formula prem = f_or(f_not(divides(alpha, gd->t)),
                                exists(gd->var, f_and(eq0(guard), gd->rest)));
            return unary("ALL-LEFT-GRD", [&] { push_ant(g, i, prem, d); });
          }
          Formula norm = normalize_guards(f, gen_);
          if (!(norm == f)) {
            return unary("GUARD-NORM", [&] { push_ant(g, i, norm, d); });
          }
          continue;  // deferred: e-matching handles it in step 3
        }
      }
    }

    for (size_t i = 0; i < g.s.suc.size(); ++i) {
      LabelledFormula lf = g.s.suc[i];
      const Formula& f = lf.f;
      Label d = lf.lab;
      auto unary = [&](const char* name, auto&& mutate, std::string fresh = "") {
        RuleInfo ri;
        ri.name = name;
        ri.comb = Comb::Id;
        ri.principal = lf.id;
        ri.d = d;
        ri.fresh = std::move(fresh);
        auto n = mk_node(g.s, std::move(ri));
        g.s.suc.erase(g.s.suc.begin() + i);
        mutate();
        chain.push_back(std::move(n));
        return 1;
      };
      if (f.is_false()) {
        g.s.suc.erase(g.s.suc.begin() + i);
        return 1;
      }
      if (f.is_true()) {
        node = leaf(g, "CLOSE-TRUE-RIGHT", d == Label::L ? f_false() : f_true());
        return 3;
      }
      switch (f.kind()) {
        case FKind::EqZero:
          continue;  // discharge target, handled in step 3
        case FKind::LeqZero:
          return unary("INEQ-RIGHT",
                       [&] { add_ineq_row(g, -f.term() + LinTerm(Int(1)), d, lf.id); });
        case FKind::Divides: {
          std::string c = gen_.fresh_const();
          return unary(
              "DIV-RIGHT",
              [&] {
                LinTerm ax = LinTerm::sym(c, f.modulus());
                add_ineq_row(g, ax - f.term() + LinTerm(Int(1)), d, lf.id);
                add_ineq_row(g, f.term() - ax - LinTerm(f.modulus()) + LinTerm(Int(1)), d,
                             lf.id);
              },
              c);
        }
        case FKind::Pred:
          return unary("MOVE-ATOM-RIGHT", [&] {
            g.s.suc_atoms.push_back({f.pred(), f.graph(), f.args(), d, lf.id});
          });
        case FKind::Not:
          return unary("NOT-RIGHT", [&] { push_ant(g, g.s.ant.size(), f.kid(0), d); });
        case FKind::Or:
          return unary("OR-RIGHT", [&] {
            push_suc(g, i, f.kid(0), d);
            push_suc(g, i + 1, f.kid(1), d);
          });
        case FKind::And: {
          RuleInfo ri;
          ri.name = d == Label::L ? "AND-RIGHT-L" : "AND-RIGHT-R";
          ri.comb = d == Label::L ? Comb::OrFold : Comb::AndFold;
          ri.principal = lf.id;
          ri.d = d;
          Sequent concl = g.s;
          Goal g1 = g, g2 = g;
          g1.s.suc.erase(g1.s.suc.begin() + i);
          g2.s.suc.erase(g2.s.suc.begin() + i);
          push_suc(g1, i, f.kid(0), d);
          push_suc(g2, i, f.kid(1), d);
          auto p1 = solve(std::move(g1));
          if (!p1) return -1;
          auto p2 = solve(std::move(g2));
          if (!p2) return -1;
          node = mk_node(std::move(concl), std::move(ri));
          node->prem.push_back(std::move(p1));
          node->prem.push_back(std::move(p2));
          return 2;
        }
        case FKind::Forall: {
          std::string c = gen_.fresh_const();
          return unary(
              "ALL-RIGHT", [&] { push_suc(g, i, substitute(f.body(), f.var(), LinTerm(c)), d); },
              c);
        }
        case FKind::Exists: {
          if (auto gd = match_guarded_exists(f)) {
            Int alpha = gd->alpha < 0 ? Int(-gd->alpha) : gd->alpha;
            LinTerm guard = LinTerm::sym(gd->var, gd->alpha) + gd->t;
            Formula prem = f_and(divides(alpha, gd->t),
                                 forall(gd->var, f_or(f_not(eq0(guard)), gd->rest)));
            return unary("EX-RIGHT-GRD", [&] { push_suc(g, i, prem, d); });
          }
          Formula norm = normalize_guards(f, gen_);
          if (!(norm == f)) {
            return unary("GUARD-NORM", [&] { push_suc(g, i, norm, d); });
          }
          continue;  // deferred
        }
      }
    }
    return 0;
  }

  // ---------- step 2 ----------

  // returns leaf node on contradiction, nullptr otherwise; fail_ on diagnostics
  std::unique_ptr<ProofNode> refresh_arith(Goal& g,
                                           std::vector<std::unique_ptr<ProofNode>>& chain) {
    if (!g.arith_dirty) return nullptr;
    if (g.s.eqs.empty() && g.s.ineqs.empty()) {
      g.sys = SolvedEqSystem{};
      g.arith_dirty = false;
      return nullptr;
    }
    RuleInfo ri;
    ri.name = "EQ-SOLVE";
    ri.comb = Comb::Id;
    auto n = mk_node(g.s, std::move(ri));

    EqSolveResult r = solve_equalities(g.s.eqs);
    if (auto* contra = std::get_if<EqContradiction>(&r)) {
      chain.push_back(std::move(n));
      return close_eq_left(g, *contra);
    }
    g.sys = std::get<SolvedEqSystem>(r);
    std::vector<AnnLit> neweqs;
    for (size_t i = 0; i < g.sys.rows.size(); ++i) {
      const auto& row = g.sys.rows[i];
      neweqs.push_back({row.lit(), true, row.apart, long(i), 0});
    }
    g.s.eqs = std::move(neweqs);
    for (auto& iq : g.s.ineqs) iq = reduce_ineq(g.sys, iq);
    g.arith_dirty = false;
    chain.push_back(std::move(n));
    return nullptr;
  }

  // ---------- step 3 actions ----------

  std::unique_ptr<ProofNode> try_discharge(const Goal& g0, size_t suc_idx) {
    Goal g = g0;
    LabelledFormula lf = g.s.suc[suc_idx];
    assert(lf.f.kind() == FKind::EqZero);
    ReduceCert cert = g.sys.reduce(lf.f.term());
    if (!cert.residue.is_zero()) return nullptr;  // NotEntailed

    bool final_neq = lf.lab == Label::L;
    LinTerm a0 = final_neq ? lf.f.term() : LinTerm();
    LinTerm u_raw = a0 * cert.mu + cert.apart_delta;
    LinTerm u = canon_eq_term(u_raw);
    auto locals = l_locals_in(g.s, u);
    if (!locals.empty()) {
      // Lemma-6 context requires an empty prefix; diagnose instead of quantifying
      fail_ = FailKind::Diag;
      reason_ = "diagnostic: nonempty exists-prefix on CLOSE-EQ-RIGHT";
      return nullptr;
    }
    Formula contribution = final_neq ? f_not(eq0(u)) : eq0(u);

    std::vector<std::unique_ptr<ProofNode>> chain;
    // IPI-RIGHT: attach the initial partial interpolant
    {
      RuleInfo ri;
      ri.name = "IPI-RIGHT";
      ri.comb = Comb::Id;
      ri.principal = lf.id;
      ri.d = lf.lab;
      auto n = mk_node(g.s, std::move(ri));
      g.s.suc.erase(g.s.suc.begin() + suc_idx);
      g.s.target = SucAnn{lf.f.term(), a0, final_neq};
      chain.push_back(std::move(n));
    }
    if (cert.mu != 1) {
      RuleInfo ri;
      ri.name = "MUL-RIGHT";
      ri.comb = Comb::Id;
      ri.mu = cert.mu;
      auto n = mk_node(g.s, std::move(ri));
      g.s.target->s = g.s.target->s * cert.mu;
      g.s.target->apart = g.s.target->apart * cert.mu;
      chain.push_back(std::move(n));
    }
    for (const auto& [row_idx, lambda] : cert.lambdas) {
      RuleInfo ri;
      ri.name = "RED-RIGHT";
      ri.comb = Comb::Id;
      ri.lambdas = {{row_idx, lambda}};
      auto n = mk_node(g.s, std::move(ri));
      g.s.target->s += g.sys.rows[row_idx].lit() * lambda;
      g.s.target->apart += g.sys.rows[row_idx].apart * lambda;
      chain.push_back(std::move(n));
    }
    assert(g.s.target->s.is_zero());
    RuleInfo ri;
    ri.name = "CLOSE-EQ-RIGHT";
    ri.comb = Comb::Leaf;
    ri.leaf_itp = contribution;
    ri.mu = cert.mu;
    auto leaf_node = mk_node(g.s, std::move(ri));
    return wrap(chain, std::move(leaf_node));
  }

  std::unique_ptr<ProofNode> try_instance(const Goal& g0, const AxiomInst& inst) {
    Goal base = g0;
    base.used.insert(inst.key());
    InstPremises prem = instantiate_axiom(inst, gen_);

    std::vector<std::string> qsyms;
    {
      auto locals = local_syms(g0.s, inst.inst_terms, inst.flab);
      qsyms.assign(locals.begin(), locals.end());
    }
    std::vector<std::unique_ptr<ProofNode>> premises;
    for (const auto& atom_f : prem.suc_atom_premises) {
      Goal gi = base;
      push_suc(gi, gi.s.suc.size(), atom_f, inst.flab);
      auto p = solve(std::move(gi));
      if (!p) return nullptr;
      premises.push_back(std::move(p));
    }
    if (!prem.eq_premise.is_true()) {
      Goal gi = base;
      push_suc(gi, gi.s.suc.size(), prem.eq_premise, inst.flab);
      auto p = solve(std::move(gi));
      if (!p) return nullptr;
      premises.push_back(std::move(p));
    }
    {
      Goal gi = base;
      push_ant(gi, gi.s.ant.size(), prem.continuation, inst.flab);
      auto p = solve(std::move(gi));
      if (!p) return nullptr;
      premises.push_back(std::move(p));
    }

    RuleInfo inner;
    inner.name = std::string("OR-LEFT-") + label_name(inst.flab) + "+";
    inner.comb = inst.flab == Label::L ? Comb::OrFold : Comb::AndFold;
    inner.axiom = int(inst.kind);
    inner.axiom_sym = inst.sym;
    inner.trigger_ids = inst.trigger_ids;
    inner.d = inst.d;
    inner.e = inst.e;
    inner.flab = inst.flab;
    auto inner_node = mk_node(g0.s, std::move(inner));
    inner_node->prem = std::move(premises);

    RuleInfo outer;
    outer.name = std::string("ALL-LEFT-") + label_name(inst.flab) + "+";
    outer.comb = inst.flab == Label::L ? Comb::QuantUni : Comb::QuantExi;
    outer.quant_syms = qsyms;
    outer.inst_terms = inst.inst_terms;
    outer.axiom = int(inst.kind);
    outer.axiom_sym = inst.sym;
    outer.trigger_ids = inst.trigger_ids;
    outer.d = inst.d;
    outer.e = inst.e;
    outer.flab = inst.flab;
    auto outer_node = mk_node(g0.s, std::move(outer));
    outer_node->prem.push_back(std::move(inner_node));
    return outer_node;
  }

  // e-matching instantiation of a deferred universal antecedent member
  struct EMatch {
    size_t member_idx;
    std::map<std::string, LinTerm> subst;
    std::vector<LinTerm> inst_terms;
    std::string key;
  };

  std::vector<EMatch> ematch_candidates(const Goal& g) {
    std::vector<EMatch> out;
    for (size_t mi = 0; mi < g.s.ant.size(); ++mi) {
      const LabelledFormula& lf = g.s.ant[mi];
      if (lf.axiom >= 0 || lf.f.kind() != FKind::Forall) continue;
      if (match_guarded_forall(lf.f)) continue;
      // chain vars + matrix
      std::vector<std::string> vars;
      Formula body = lf.f;
      while (body.kind() == FKind::Forall) {
        vars.push_back(body.var());
        body = body.body();
      }
      // patterns: predicate/graph atoms in the matrix
      std::vector<Formula> pats;
      std::function<void(const Formula&)> collect = [&](const Formula& f) {
        switch (f.kind()) {
          case FKind::Pred:
            pats.push_back(f);
            break;
          case FKind::Not:
          case FKind::And:
          case FKind::Or:
            for (const auto& k : f.kids()) collect(k);
            break;
          case FKind::Forall:
          case FKind::Exists:
            collect(f.body());
            break;
          default:
            break;
        }
      };
      collect(body);

      auto match_atom = [&](const Formula& pat, const PredAtom& atom,
                            std::map<std::string, LinTerm>& subst) -> bool {
        if (pat.pred() != atom.pred || pat.graph() != atom.graph ||
            pat.args().size() != atom.args.size())
          return false;
        for (size_t k = 0; k < pat.args().size(); ++k) {
          LinTerm residual = pat.args()[k];
          for (const auto& [v, t] : subst) residual = residual.subst(v, t);
          std::vector<std::string> unknown;
          for (const auto& v : vars)
            if (residual.coeff_of(v) != 0 && !subst.count(v)) unknown.push_back(v);
          if (unknown.empty()) {
            if (!(residual == atom.args[k])) return false;
            continue;
          }
          if (unknown.size() > 1) return false;
          const std::string& x = unknown[0];
          Int alpha = residual.coeff_of(x);
          LinTerm diff = atom.args[k] - (residual - LinTerm::sym(x, alpha));
          // diff must be alpha * value
          LinTerm val;
          if (diff.const_part() % alpha != 0) return false;
          val.add_const(diff.const_part() / alpha);
          for (const auto& [sy, c] : diff.coeffs()) {
            if (c % alpha != 0) return false;
            val.add_sym(sy, c / alpha);
          }
          for (const auto& [ap, c] : diff.fun_apps()) {
            if (c % alpha != 0) return false;
            val.add_app(ap, c / alpha);
          }
          subst[x] = val;
        }
        return true;
      };

      std::vector<const PredAtom*> ground;
      for (const auto& a : g.s.ant_atoms) ground.push_back(&a);
      for (const auto& a : g.s.suc_atoms) ground.push_back(&a);

      for (size_t pi = 0; pi < pats.size() && out.size() < 64; ++pi) {
        for (const PredAtom* atom : ground) {
          std::map<std::string, LinTerm> subst;
          if (!match_atom(pats[pi], *atom, subst)) continue;
          if (subst.size() != vars.size()) continue;  // all block vars bound
          EMatch em;
          em.member_idx = mi;
          em.subst = subst;
          std::ostringstream key;
          key << "EM:" << lf.id;
          for (const auto& v : vars) {
            em.inst_terms.push_back(subst.at(v));
            key << ":" << print_term(subst.at(v));
          }
          em.key = key.str();
          if (g.used.count(em.key)) continue;
          out.push_back(std::move(em));
        }
      }
    }
    return out;
  }

  std::unique_ptr<ProofNode> try_ematch(const Goal& g0, const EMatch& em) {
    Goal g = g0;
    g.used.insert(em.key);
    const LabelledFormula& lf = g.s.ant[em.member_idx];
    Label d = lf.lab;
    Formula inst = lf.f;
    while (inst.kind() == FKind::Forall) {
      auto it = em.subst.find(inst.var());
      if (it == em.subst.end()) return nullptr;
      Formula body = inst.body();
      inst = substitute(body, inst.var(), it->second);
    }
    std::vector<std::string> qsyms;
    {
      auto locals = local_syms(g0.s, em.inst_terms, d);
      qsyms.assign(locals.begin(), locals.end());
    }
    push_ant(g, em.member_idx, inst, d);
    auto p = solve(std::move(g));
    if (!p) return nullptr;
    RuleInfo ri;
    ri.name = std::string("ALL-LEFT-") + label_name(d);
    ri.comb = d == Label::L ? Comb::QuantUni : Comb::QuantExi;
    ri.quant_syms = qsyms;
    ri.inst_terms = em.inst_terms;
    ri.principal = lf.id;
    ri.d = d;
    auto n = mk_node(g0.s, std::move(ri));
    n->prem.push_back(std::move(p));
    return n;
  }

  // ---------- step 4 ----------

  std::unique_ptr<ProofNode> try_fm_close(const Goal& g) {
    auto contra = fm_inconsistency(g.s.ineqs);
    if (!contra) return nullptr;
    LinTerm u = canon_leq_term(contra->apart);
    auto locals = l_locals_in(g.s, u);
    if (!locals.empty()) {
      fail_ = FailKind::Diag;
      reason_ = "diagnostic: nonempty exists-prefix on CLOSE-INEQ";
      return nullptr;
    }
    RuleInfo ri;
    ri.name = "CLOSE-INEQ";
    ri.comb = Comb::Leaf;
    ri.leaf_itp = leq0(u);
    auto n = mk_node(g.s, std::move(ri));
    return n;
  }

  void probe_sat() {
    if (probe_done_ || !probe_) return;
    probe_done_ = true;
    if (sig_.has_arrays) return;  // array models need the axioms; never claim sat
    BoundedEval ev(cfg_.model_bound, cfg_.model_budget);
    try {
      auto m = ev.search(*probe_);
      if (m && !ev.approx_used()) {
        fail_ = FailKind::Sat;
        witness_ = *m;
      }
    } catch (const EvalBudgetExceeded&) {
    }
  }

  std::unique_ptr<ProofNode> try_strengthen(Goal& g) {
    // fair pick: least (times_strengthened, id)
    size_t best = g.s.ineqs.size();
    for (size_t i = 0; i < g.s.ineqs.size(); ++i) {
      if (best == g.s.ineqs.size() ||
          std::make_pair(g.s.ineqs[i].times_strengthened, g.s.ineqs[i].id) <
              std::make_pair(g.s.ineqs[best].times_strengthened, g.s.ineqs[best].id))
        best = i;
    }
    if (best == g.s.ineqs.size()) return nullptr;
    AnnLit picked = g.s.ineqs[best];
    stats_.max_strengthen = std::max(stats_.max_strengthen, picked.times_strengthened + 1);
    StrengthenPremises sp = strengthen_step(picked);

    RuleInfo ri;
    ri.name = "STRENGTHEN";
    ri.comb = Comb::Strengthen;
    ri.principal = picked.id;
    Sequent concl = g.s;

    Goal geq = g, ga = g, gb = g;
    geq.s.ineqs.erase(geq.s.ineqs.begin() + best);
    geq.s.eqs.push_back(sp.eq_case);
    geq.arith_dirty = true;
    ga.s.ineqs[best] = sp.ineq_charge_a;
    gb.s.ineqs[best] = sp.ineq_charge_b;

    auto p1 = solve(std::move(geq));
    if (!p1) return nullptr;
    auto p2 = solve(std::move(ga));
    if (!p2) return nullptr;
    auto p3 = solve(std::move(gb));
    if (!p3) return nullptr;
    auto n = mk_node(std::move(concl), std::move(ri));
    n->prem.push_back(std::move(p1));
    n->prem.push_back(std::move(p2));
    n->prem.push_back(std::move(p3));
    return n;
  }

  // ---------- main loop ----------

  std::unique_ptr<ProofNode> solve(Goal g) {
    std::vector<std::unique_ptr<ProofNode>> chain;
    if (++g.depth > cfg_.max_depth) {
      fail_ = FailKind::Budget;
      reason_ = "BudgetExceeded: depth";
      return nullptr;
    }
    for (;;) {
      if (over_budget()) return nullptr;

      if (auto n = try_close(g)) return wrap(chain, std::move(n));

      std::unique_ptr<ProofNode> node;
      int r = structural_step(g, chain, node);
      if (r == -1) return nullptr;
      if (r == 1) continue;
      if (r == 2 || r == 3) return wrap(chain, std::move(node));

      if (auto n = refresh_arith(g, chain)) return wrap(chain, std::move(n));
      if (fail_ == FailKind::Diag) return nullptr;

      // step 3: discharges, axiom instances, e-matching — first success wins
      for (size_t i = 0; i < g.s.suc.size(); ++i) {
        if (g.s.suc[i].f.kind() != FKind::EqZero) continue;
        if (auto n = try_discharge(g, i)) return wrap(chain, std::move(n));
        if (fail_ == FailKind::Sat || fail_ == FailKind::Budget) return nullptr;
        fail_ = FailKind::None;
      }

      auto insts = select_instantiation_pairs(g.s, g.sys, sig_, cfg_.restricted);
      std::erase_if(insts, [&](const AxiomInst& i) { return g.used.count(i.key()); });
      std::stable_sort(insts.begin(), insts.end(), [&](const AxiomInst& a, const AxiomInst& b) {
        if (cfg_.fc_order == StrategyConfig::FcOrder::Derivation)
          return a.trigger_ids < b.trigger_ids;
        return a.trigger_ids > b.trigger_ids;
      });
      for (const auto& inst : insts) {
        auto n = try_instance(g, inst);
        if (n) return wrap(chain, std::move(n));
        if (fail_ == FailKind::Sat || fail_ == FailKind::Budget) return nullptr;
        fail_ = FailKind::None;
        // a dead instance stays selectable: it may close after new equalities
      }

      for (const auto& em : ematch_candidates(g)) {
        auto n = try_ematch(g, em);
        if (n) return wrap(chain, std::move(n));
        if (fail_ == FailKind::Sat || fail_ == FailKind::Budget) return nullptr;
        fail_ = FailKind::None;
      }

      if (auto n = try_fm_close(g)) return wrap(chain, std::move(n));
      if (fail_ == FailKind::Diag) return nullptr;

      probe_sat();
      if (fail_ == FailKind::Sat) return nullptr;

      if (!g.s.ineqs.empty()) {
        auto n = try_strengthen(g);
        if (n) return wrap(chain, std::move(n));
        return nullptr;
      }

      fail_ = FailKind::Dead;
      if (reason_.empty()) reason_ = "saturated goal: no rule applicable, no bounded model";
      return nullptr;
    }
  }
};

}  // namespace

ProveResult prove(const Sequent& root, const Signature& sig, const StrategyConfig& cfg,
                  SymbolGen& gen, const std::optional<Formula>& sat_probe) {
  std::optional<Formula> probe = sat_probe;
  if (!probe) {
    // synthesize from root members when they are function/graph-free
    std::vector<Formula> parts;
    bool ok = true;
    for (const auto& lf : root.ant) {
      if (lf.axiom >= 0) continue;
      SymbolSet fs = free_symbols(lf.f);
      if (!fs.funs.empty()) ok = false;
      parts.push_back(lf.f);
    }
    for (const auto& lf : root.suc) {
      SymbolSet fs = free_symbols(lf.f);
      if (!fs.funs.empty()) ok = false;
      parts.push_back(f_not(lf.f));
    }
    if (ok && root.eqs.empty() && root.ineqs.empty() && root.ant_atoms.empty() &&
        root.suc_atoms.empty())
      probe = mk_and(parts);
  }
  Engine e(sig, cfg, gen, probe);
  return e.run(root);
}

// ---------------------------------------------------------------------------
// Spec-level single-rule application (test surface).

RuleApplication apply_prop_rule(const std::string& rule, const Sequent& s, size_t ant_idx,
                                size_t suc_idx) {
  RuleApplication out;
  auto need_ant = [&]() -> const LabelledFormula& {
    if (ant_idx >= s.ant.size()) throw SchemaMismatch(rule + ": bad antecedent position");
    return s.ant[ant_idx];
  };
  auto need_suc = [&]() -> const LabelledFormula& {
    if (suc_idx >= s.suc.size()) throw SchemaMismatch(rule + ": bad succedent position");
    return s.suc[suc_idx];
  };

  if (rule == "CLOSE-LL" || rule == "CLOSE-RR" || rule == "CLOSE-LR" || rule == "CLOSE-RL") {
    const auto& la = need_ant();
    const auto& ls = need_suc();
    if (!(la.f == ls.f)) throw SchemaMismatch(rule + ": formulas differ");
    Label d = rule[6] == 'L' ? Label::L : Label::R;
    Label e = rule[7] == 'L' ? Label::L : Label::R;
    if (la.lab != d || ls.lab != e) throw SchemaMismatch(rule + ": wrong labels");
    out.comb = Comb::Leaf;
    if (rule == "CLOSE-LL") out.leaf_itp = f_false();
    if (rule == "CLOSE-RR") out.leaf_itp = f_true();
    if (rule == "CLOSE-LR") out.leaf_itp = la.f;
    if (rule == "CLOSE-RL") out.leaf_itp = f_not(la.f);
    return out;
  }

  if (rule == "OR-LEFT-L" || rule == "OR-LEFT-R") {
    const auto& la = need_ant();
    Label d = rule.back() == 'L' ? Label::L : Label::R;
    if (la.f.kind() != FKind::Or || la.lab != d)
      throw SchemaMismatch(rule + ": principal formula");
    for (int k = 0; k < 2; ++k) {
      Sequent p = s;
      p.ant[ant_idx].f = la.f.kid(k);
      out.premises.push_back(std::move(p));
    }
    out.comb = d == Label::L ? Comb::OrFold : Comb::AndFold;
    return out;
  }
  if (rule == "AND-LEFT") {
    const auto& la = need_ant();
    if (la.f.kind() != FKind::And) throw SchemaMismatch(rule + ": principal formula");
    Sequent p = s;
    p.ant[ant_idx].f = la.f.kid(0);
    p.ant.insert(p.ant.begin() + ant_idx + 1, {la.f.kid(1), la.lab, -1, "", la.id});
    out.premises.push_back(std::move(p));
    out.comb = Comb::Id;
    return out;
  }
  if (rule == "OR-RIGHT") {
    const auto& ls = need_suc();
    if (ls.f.kind() != FKind::Or) throw SchemaMismatch(rule + ": principal formula");
    Sequent p = s;
    p.suc[suc_idx].f = ls.f.kid(0);
    p.suc.insert(p.suc.begin() + suc_idx + 1, {ls.f.kid(1), ls.lab, -1, "", ls.id});
    out.premises.push_back(std::move(p));
    out.comb = Comb::Id;
    return out;
  }
  if (rule == "AND-RIGHT-L" || rule == "AND-RIGHT-R") {
    const auto& ls = need_suc();
    Label d = rule.back() == 'L' ? Label::L : Label::R;
    if (ls.f.kind() != FKind::And || ls.lab != d)
      throw SchemaMismatch(rule + ": principal formula");
    for (int k = 0; k < 2; ++k) {
      Sequent p = s;
      p.suc[suc_idx].f = ls.f.kid(k);
      out.premises.push_back(std::move(p));
    }
    out.comb = d == Label::L ? Comb::OrFold : Comb::AndFold;
    return out;
  }
  if (rule == "NOT-LEFT") {
    const auto& la = need_ant();
    if (la.f.kind() != FKind::Not) throw SchemaMismatch(rule + ": principal formula");
    Sequent p = s;
    p.suc.push_back({la.f.kid(0), la.lab, -1, "", la.id});
    p.ant.erase(p.ant.begin() + ant_idx);
    out.premises.push_back(std::move(p));
    out.comb = Comb::Id;
    return out;
  }
  if (rule == "NOT-RIGHT") {
    const auto& ls = need_suc();
    if (ls.f.kind() != FKind::Not) throw SchemaMismatch(rule + ": principal formula");
    Sequent p = s;
    p.ant.push_back({ls.f.kid(0), ls.lab, -1, "", ls.id});
    p.suc.erase(p.suc.begin() + suc_idx);
    out.premises.push_back(std::move(p));
    out.comb = Comb::Id;
    return out;
  }
  throw SchemaMismatch("unknown propositional rule " + rule);
}

RuleApplication apply_quant_rule(const std::string& rule, const Sequent& s, bool in_ant,
                                 size_t idx, const std::optional<LinTerm>& inst,
                                 SymbolGen& gen) {
  RuleApplication out;
  const auto& vec = in_ant ? s.ant : s.suc;
  if (idx >= vec.size()) throw SchemaMismatch(rule + ": bad position");
  const LabelledFormula& lf = vec[idx];

  if (rule == "ALL-LEFT-L" || rule == "ALL-LEFT-R") {
    Label d = rule.back() == 'L' ? Label::L : Label::R;
    if (!in_ant || lf.f.kind() != FKind::Forall || lf.lab != d)
      throw SchemaMismatch(rule + ": principal formula");
    if (!inst) throw SchemaMismatch(rule + ": instantiation term required");
    Sequent p = s;
    p.ant.insert(p.ant.begin() + idx,
                 {substitute(lf.f.body(), lf.f.var(), *inst), d, -1, "", lf.id});
    out.premises.push_back(std::move(p));
    out.comb = d == Label::L ? Comb::QuantUni : Comb::QuantExi;
    std::set<std::string, SymLess> syms;
    inst->collect_symbols(syms);
    auto voc = s.vocab(d);
    for (const auto& c : syms)
      if (!voc.count(c)) out.quant_syms.push_back(c);
    return out;
  }
  if (rule == "EX-LEFT" || rule == "ALL-RIGHT") {
    bool want_ant = rule == "EX-LEFT";
    FKind want = want_ant ? FKind::Exists : FKind::Forall;
    if (in_ant != want_ant || lf.f.kind() != want) throw SchemaMismatch(rule + ": principal");
    std::string c = gen.fresh_const();
    Sequent p = s;
    Formula instd = substitute(lf.f.body(), lf.f.var(), LinTerm(c));
    if (want_ant) {
      p.ant[idx].f = instd;
    } else {
      p.suc[idx].f = instd;
    }
    out.premises.push_back(std::move(p));
    out.comb = Comb::Id;
    return out;
  }
  if (rule == "ALL-LEFT-GRD" || rule == "EX-RIGHT-GRD") {
    bool left = rule == "ALL-LEFT-GRD";
    if (in_ant != left) throw SchemaMismatch(rule + ": wrong side");
    auto gd = left ? match_guarded_forall(lf.f) : match_guarded_exists(lf.f);
    if (!gd) throw NonGuarded(rule + ": formula does not match the guarded shape");
    Int alpha = gd->alpha < 0 ? Int(-gd->alpha) : gd->alpha;
    LinTerm guard = LinTerm::sym(gd->var, gd->alpha) + gd->t;
    Sequent p = s;
    if (left) {
      p.ant[idx].f =
          f_or(f_not(divides(alpha, gd->t)), exists(gd->var, f_and(eq0(guard), gd->rest)));
    } else {
      p.suc[idx].f =
          f_and(divides(alpha, gd->t), forall(gd->var, f_or(f_not(eq0(guard)), gd->rest)));
    }
    out.premises.push_back(std::move(p));
    out.comb = Comb::Id;
    return out;
  }
  throw SchemaMismatch("unknown quantifier rule " + rule);
}

}  // namespace itp
