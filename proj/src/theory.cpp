#include "itp/theory.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace itp {

namespace {

// Replace every occurrence of the application `app` in a term by `repl`.
LinTerm replace_app_term(const LinTerm& t, const FunApp& app, const LinTerm& repl) {
  LinTerm r(t.const_part());
  for (const auto& [s, c] : t.coeffs()) r.add_sym(s, c);
  for (const auto& [a, c] : t.fun_apps()) {
    if (a == app) {
      r += repl * c;
      continue;
    }
    FunApp na;
    na.fun = a.fun;
    na.den = a.den;
    for (const auto& arg : a.args) na.args.push_back(replace_app_term(arg, app, repl));
    r.add_app(na, c);
  }
  return r;
}

Formula replace_app(const Formula& f, const FunApp& app, const LinTerm& repl) {
  switch (f.kind()) {
    case FKind::EqZero:
      return eq0(replace_app_term(f.term(), app, repl));
    case FKind::LeqZero:
      return leq0(replace_app_term(f.term(), app, repl));
    case FKind::Divides:
      return divides(f.modulus(), replace_app_term(f.term(), app, repl));
    case FKind::Pred: {
      std::vector<LinTerm> na;
      for (const auto& a : f.args()) na.push_back(replace_app_term(a, app, repl));
      return pred_app(f.pred(), std::move(na), f.graph());
    }
    case FKind::Not:
      return f_not(replace_app(f.kid(0), app, repl));
    case FKind::And:
      return f_and(replace_app(f.kid(0), app, repl), replace_app(f.kid(1), app, repl));
    case FKind::Or:
      return f_or(replace_app(f.kid(0), app, repl), replace_app(f.kid(1), app, repl));
    case FKind::Forall:
    case FKind::Exists: {
      FNode n;
      n.kind = f.kind();
      n.var = f.var();
      n.kids.push_back(replace_app(f.body(), app, repl));
      return Formula::make(std::move(n));
    }
  }
  return f;
}

bool term_mentions_any(const LinTerm& t, const std::set<std::string, SymLess>& syms) {
  for (const auto& s : syms)
    if (t.contains_sym(s)) return true;
  return false;
}

// Innermost application whose arguments are free of the bound variables in
// scope at its position. bad_capture reports an application blocked by a
// quantifier that is neither guarded nor a relational binding.
struct AppScan {
  const FunApp* found = nullptr;
  bool blocked = false;
};

void scan_term(const LinTerm& t, const std::set<std::string, SymLess>& bound, AppScan& out) {
  for (const auto& [a, c] : t.fun_apps()) {
    if (out.found) return;
    for (const auto& arg : a.args) scan_term(arg, bound, out);  // innermost first
    if (out.found) return;
    bool captured = false;
    for (const auto& arg : a.args)
      if (term_mentions_any(arg, bound)) captured = true;
    if (captured) {
      out.blocked = true;
    } else {
      out.found = &a;
    }
  }
}

void scan_formula(const Formula& f, std::set<std::string, SymLess>& bound, AppScan& out) {
  if (out.found) return;
  switch (f.kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Divides:
      scan_term(f.term(), bound, out);
      break;
    case FKind::Pred:
      for (const auto& a : f.args()) {
        scan_term(a, bound, out);
        if (out.found) return;
      }
      break;
    case FKind::Not:
    case FKind::And:
    case FKind::Or:
      for (const auto& k : f.kids()) {
        scan_formula(k, bound, out);
        if (out.found) return;
      }
      break;
    case FKind::Forall:
    case FKind::Exists: {
      bool inserted = bound.insert(f.var()).second;
      scan_formula(f.body(), bound, out);
      if (inserted) bound.erase(f.var());
      break;
    }
  }
}

Formula encode_rec(const Formula& f, SymbolGen& gen) {
  if (f.kind() == FKind::Forall || f.kind() == FKind::Exists) {
    FNode n;
    n.kind = f.kind();
    n.var = f.var();
    n.kids.push_back(encode_rec(f.body(), gen));
    return Formula::make(std::move(n));
  }
  AppScan scan;
  std::set<std::string, SymLess> bound;
  scan_formula(f, bound, scan);
  if (scan.found) {
    FunApp app = *scan.found;
    std::string x = gen.fresh_var();
    std::vector<LinTerm> gargs = app.args;
    gargs.push_back(LinTerm(x));
    Formula graph = pred_app(app.fun, std::move(gargs), true);
    Formula rewritten = replace_app(f, app, LinTerm(x));
    return exists(x, f_and(graph, encode_rec(rewritten, gen)));
  }
  if (!has_fun_apps(f)) return f;
  // applications blocked by binders: descend through connectives
  switch (f.kind()) {
    case FKind::And:
      return f_and(encode_rec(f.kid(0), gen), encode_rec(f.kid(1), gen));
    case FKind::Or:
      return f_or(encode_rec(f.kid(0), gen), encode_rec(f.kid(1), gen));
    default:
      throw QuantifiedFunctionArgs(
          "rel_encode: function argument contains a bound variable");
  }
}

}  // namespace

Formula rel_encode(const Formula& phi, SymbolGen& gen) { return encode_rec(phi, gen); }

Formula back_translate(const Formula& phi, bool* collapsible) {
  std::function<Formula(const Formula&)> go = [&](const Formula& f) -> Formula {
    switch (f.kind()) {
      case FKind::Not:
        return f_not(go(f.kid(0)));
      case FKind::And:
        return f_and(go(f.kid(0)), go(f.kid(1)));
      case FKind::Or:
        return f_or(go(f.kid(0)), go(f.kid(1)));
      case FKind::Forall:
      case FKind::Exists: {
        FNode n;
        n.kind = f.kind();
        n.var = f.var();
        n.kids.push_back(go(f.body()));
        Formula g = Formula::make(std::move(n));
        if (g.kind() == FKind::Exists) {
          if (auto rb = match_rel_exists(g)) {
            std::vector<LinTerm> args(rb->graph_atom.args().begin(),
                                      rb->graph_atom.args().end() - 1);
            FunApp app(rb->graph_atom.pred(), std::move(args));
            return go(substitute(rb->rest, rb->var, LinTerm(app)));
          }
        }
        return g;
      }
      default:
        return f;
    }
  };
  Formula out = go(phi);
  bool ok = true;
  std::function<void(const Formula&)> chk = [&](const Formula& f) {
    if (f.kind() == FKind::Pred && f.graph()) ok = false;
    for (const auto& k : f.kids()) chk(k);
  };
  chk(out);
  if (collapsible) *collapsible = ok;
  return ok ? out : phi;
}

namespace {

std::vector<LinTerm> var_terms(const std::vector<std::string>& vs) {
  std::vector<LinTerm> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.emplace_back(v);
  return out;
}

Formula args_equal(const std::vector<LinTerm>& a, const std::vector<LinTerm>& b) {
  assert(a.size() == b.size());
  std::vector<Formula> eqs;
  for (size_t i = 0; i < a.size(); ++i) eqs.push_back(eq0(a[i] - b[i]));
  return mk_and(eqs);
}

Formula close_under(const std::vector<std::string>& vars, Formula body, bool universal) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    FNode n;
    n.kind = universal ? FKind::Forall : FKind::Exists;
    n.var = *it;
    n.kids.push_back(std::move(body));
    body = Formula::make(std::move(n));
  }
  return body;
}

}  // namespace

Formula pc_axiom(const std::string& pred, size_t arity, SymbolGen& gen) {
  std::vector<std::string> xs1, xs2;
  for (size_t i = 0; i < arity; ++i) xs1.push_back(gen.fresh_var());
  for (size_t i = 0; i < arity; ++i) xs2.push_back(gen.fresh_var());
  Formula prem = f_and(pred_app(pred, var_terms(xs1)), args_equal(var_terms(xs1), var_terms(xs2)));
  Formula body = f_or(f_not(prem), pred_app(pred, var_terms(xs2)));
  std::vector<std::string> all = xs1;
  all.insert(all.end(), xs2.begin(), xs2.end());
  return close_under(all, body, true);
}

Formula fc_axiom(const std::string& fun, size_t arity, SymbolGen& gen) {
  std::vector<std::string> xs1, xs2;
  for (size_t i = 0; i < arity; ++i) xs1.push_back(gen.fresh_var());
  for (size_t i = 0; i < arity; ++i) xs2.push_back(gen.fresh_var());
  std::string y1 = gen.fresh_var(), y2 = gen.fresh_var();
  auto a1 = var_terms(xs1);
  a1.emplace_back(y1);
  auto a2 = var_terms(xs2);
  a2.emplace_back(y2);
  Formula prem = mk_and({pred_app(fun, a1, true), pred_app(fun, a2, true),
                         args_equal(var_terms(xs1), var_terms(xs2))});
  Formula body = f_or(f_not(prem), eq0(LinTerm(y1) - LinTerm(y2)));
  std::vector<std::string> all = xs1;
  all.insert(all.end(), xs2.begin(), xs2.end());
  all.push_back(y1);
  all.push_back(y2);
  return close_under(all, body, true);
}

std::array<Formula, 3> array_axioms(SymbolGen& gen) {
  // AR1: store_p(x1,y,z1,x2) /\ select_p(x2,y,z2) -> z1 = z2
  std::string x1 = gen.fresh_var(), x2 = gen.fresh_var(), y = gen.fresh_var(),
              z1 = gen.fresh_var(), z2 = gen.fresh_var();
  Formula ar1_body =
      f_or(f_not(f_and(pred_app("store", {LinTerm(x1), LinTerm(y), LinTerm(z1), LinTerm(x2)}, true),
                       pred_app("select", {LinTerm(x2), LinTerm(y), LinTerm(z2)}, true))),
           eq0(LinTerm(z1) - LinTerm(z2)));
  Formula ar1 = close_under({x1, x2, y, z1, z2}, ar1_body, true);

  // AR2: store_p(x1,y1,z,x2) /\ select_p(x1,y2,z1) /\ select_p(x2,y2,z2)
  //        -> y1 = y2 \/ z1 = z2
  std::string bx1 = gen.fresh_var(), bx2 = gen.fresh_var(), by1 = gen.fresh_var(),
              by2 = gen.fresh_var(), bz = gen.fresh_var(), bz1 = gen.fresh_var(),
              bz2 = gen.fresh_var();
  Formula ar2_body = f_or(
      f_not(mk_and({pred_app("store", {LinTerm(bx1), LinTerm(by1), LinTerm(bz), LinTerm(bx2)}, true),
                    pred_app("select", {LinTerm(bx1), LinTerm(by2), LinTerm(bz1)}, true),
                    pred_app("select", {LinTerm(bx2), LinTerm(by2), LinTerm(bz2)}, true)})),
      f_or(eq0(LinTerm(by1) - LinTerm(by2)), eq0(LinTerm(bz1) - LinTerm(bz2))));
  Formula ar2 = close_under({bx1, bx2, by1, by2, bz, bz1, bz2}, ar2_body, true);

  // AR3: (forall y,z1,z2. select_p(x1,y,z1) /\ select_p(x2,y,z2) -> z1 = z2)
  //        -> x1 = x2
  std::string cx1 = gen.fresh_var(), cx2 = gen.fresh_var(), cy = gen.fresh_var(),
              cz1 = gen.fresh_var(), cz2 = gen.fresh_var();
  Formula inner =
      f_or(f_not(f_and(pred_app("select", {LinTerm(cx1), LinTerm(cy), LinTerm(cz1)}, true),
                       pred_app("select", {LinTerm(cx2), LinTerm(cy), LinTerm(cz2)}, true))),
           eq0(LinTerm(cz1) - LinTerm(cz2)));
  Formula ar3_body =
      f_or(f_not(close_under({cy, cz1, cz2}, inner, true)), eq0(LinTerm(cx1) - LinTerm(cx2)));
  Formula ar3 = close_under({cx1, cx2}, ar3_body, true);
  return {ar1, ar2, ar3};
}

std::string AxiomInst::key() const {
  std::ostringstream os;
  os << axiom_name(kind) << ':' << sym;
  for (long id : trigger_ids) os << ':' << id;
  return os.str();
}

namespace {

Label pick_flabel(AxiomKind kind, Label d, Label e) {
  if (kind == AxiomKind::PC) return d;
  return (d == Label::R || e == Label::R) ? Label::R : Label::L;
}

void record_subst(AxiomInst& inst) {
  int i = 0;
  for (const auto& t : inst.inst_terms) inst.subst["x" + std::to_string(++i)] = t;
}

}  // namespace

std::vector<AxiomInst> select_instantiation_pairs(const Sequent& s, const SolvedEqSystem& sys,
                                                  const Signature& sig, bool restricted) {
  std::vector<AxiomInst> out;

  auto entailed = [&](const std::vector<LinTerm>& a, const std::vector<LinTerm>& b) {
    return entails_equality(sys, a, b);
  };
  auto gate = [&](Label d, Label e, bool ent) {
    if (!restricted) return true;       // free strategy: no gate
    if (d == e) return true;            // same-label pairs are uncritical
    return ent;
  };

  // PC: antecedent p(s...) vs succedent p(t...)
  for (const auto& pa : s.ant_atoms) {
    if (pa.graph) continue;
    for (const auto& ps : s.suc_atoms) {
      if (ps.graph || ps.pred != pa.pred || ps.args.size() != pa.args.size()) continue;
      if (pa.args == ps.args) continue;  // handled by CLOSE-*
      bool ent = entailed(pa.args, ps.args);
      if (!gate(pa.lab, ps.lab, ent)) continue;
      AxiomInst inst;
      inst.kind = AxiomKind::PC;
      inst.sym = pa.pred;
      inst.d = pa.lab;
      inst.e = ps.lab;
      inst.flab = pick_flabel(inst.kind, inst.d, inst.e);
      inst.trigger_ids = {pa.id, ps.id};
      inst.atoms = {pa, ps};
      inst.inst_terms = pa.args;
      inst.inst_terms.insert(inst.inst_terms.end(), ps.args.begin(), ps.args.end());
      record_subst(inst);
      out.push_back(std::move(inst));
    }
  }

  // FC: two antecedent graph atoms of the same function
  for (size_t i = 0; i < s.ant_atoms.size(); ++i) {
    const auto& a1 = s.ant_atoms[i];
    if (!a1.graph) continue;
    for (size_t j = i + 1; j < s.ant_atoms.size(); ++j) {
      const auto& a2 = s.ant_atoms[j];
      if (!a2.graph || a2.pred != a1.pred || a2.args.size() != a1.args.size()) continue;
      std::vector<LinTerm> args1(a1.args.begin(), a1.args.end() - 1);
      std::vector<LinTerm> args2(a2.args.begin(), a2.args.end() - 1);
      if (args1 == args2 && a1.args.back() == a2.args.back()) continue;  // identical atoms
      bool ent = entailed(args1, args2);
      if (!gate(a1.lab, a2.lab, ent)) continue;
      if (sys.entails_zero(a1.args.back() - a2.args.back())) continue;  // conclusion known
      AxiomInst inst;
      inst.kind = AxiomKind::FC;
      inst.sym = a1.pred;
      inst.d = a1.lab;
      inst.e = a2.lab;
      inst.flab = pick_flabel(inst.kind, inst.d, inst.e);
      inst.trigger_ids = {a1.id, a2.id};
      inst.atoms = {a1, a2};
      inst.inst_terms = a1.args;
      inst.inst_terms.insert(inst.inst_terms.end(), a2.args.begin(), a2.args.end());
      record_subst(inst);
      out.push_back(std::move(inst));
    }
  }

  if (sig.has_arrays) {
    // AR1: store_p(b,i,v,r) with select_p(r',i',z), r = r', i = i' entailed
    for (const auto& st : s.ant_atoms) {
      if (!st.graph || st.pred != "store") continue;
      for (const auto& se : s.ant_atoms) {
        if (!se.graph || se.pred != "select") continue;
        if (!sys.entails_zero(st.args[3] - se.args[0])) continue;
        if (!sys.entails_zero(st.args[1] - se.args[1])) continue;
        if (sys.entails_zero(st.args[2] - se.args[2])) continue;  // conclusion known
        AxiomInst inst;
        inst.kind = AxiomKind::AR1;
        inst.d = st.lab;
        inst.e = se.lab;
        inst.flab = pick_flabel(inst.kind, inst.d, inst.e);
        inst.trigger_ids = {st.id, se.id};
        inst.atoms = {st, se};
        inst.inst_terms = st.args;
        inst.inst_terms.insert(inst.inst_terms.end(), se.args.begin(), se.args.end());
        record_subst(inst);
        out.push_back(std::move(inst));
      }
    }
    // AR2: store_p(b,i,v,r), select_p(b',j,z1) on the base, select_p(r',j',z2)
    // on the result, with b=b', r=r', j=j' entailed
    for (const auto& st : s.ant_atoms) {
      if (!st.graph || st.pred != "store") continue;
      for (const auto& se1 : s.ant_atoms) {
        if (!se1.graph || se1.pred != "select") continue;
        if (!sys.entails_zero(st.args[0] - se1.args[0])) continue;
        for (const auto& se2 : s.ant_atoms) {
          if (!se2.graph || se2.pred != "select") continue;
          if (se2.id == se1.id) continue;
          if (!sys.entails_zero(st.args[3] - se2.args[0])) continue;
          if (!sys.entails_zero(se1.args[1] - se2.args[1])) continue;
          if (sys.entails_zero(se1.args[2] - se2.args[2])) continue;
          if (sys.entails_zero(st.args[1] - se1.args[1])) continue;  // AR1 situation
          AxiomInst inst;
          inst.kind = AxiomKind::AR2;
          inst.d = st.lab;
          inst.e = (se1.lab == Label::R || se2.lab == Label::R) ? Label::R : Label::L;
          inst.flab = pick_flabel(inst.kind, inst.d, inst.e);
          inst.trigger_ids = {st.id, se1.id, se2.id};
          inst.atoms = {st, se1, se2};
          inst.inst_terms = st.args;
          inst.inst_terms.insert(inst.inst_terms.end(), se1.args.begin(), se1.args.end());
          inst.inst_terms.insert(inst.inst_terms.end(), se2.args.begin(), se2.args.end());
          record_subst(inst);
          out.push_back(std::move(inst));
        }
      }
    }
    // AR3: succedent equality between array-sorted constants
    for (const auto& lf : s.suc) {
      if (lf.f.kind() != FKind::EqZero) continue;
      const LinTerm& u = lf.f.term();
      if (u.const_part() != 0 || !u.fun_apps().empty() || u.coeffs().size() != 2) continue;
      auto it = u.coeffs().begin();
      auto [c1, k1] = *it;
      auto [c2, k2] = *std::next(it);
      if (!((k1 == 1 && k2 == -1) || (k1 == -1 && k2 == 1))) continue;
      if (sig.sort_of_const(c1) != Sort::ArrayS || sig.sort_of_const(c2) != Sort::ArrayS)
        continue;
      AxiomInst inst;
      inst.kind = AxiomKind::AR3;
      inst.d = lf.lab;
      inst.e = lf.lab;
      inst.flab = lf.lab;
      inst.trigger_ids = {lf.id};
      inst.inst_terms = {LinTerm(c1), LinTerm(c2)};
      record_subst(inst);
      out.push_back(std::move(inst));
    }
  }
  return out;
}

InstPremises instantiate_axiom(const AxiomInst& inst, SymbolGen& gen) {
  InstPremises p;
  switch (inst.kind) {
    case AxiomKind::PC: {
      const PredAtom& pa = inst.atoms[0];
      const PredAtom& ps = inst.atoms[1];
      p.suc_atom_premises = {pa.to_formula()};
      p.eq_premise = args_equal(pa.args, ps.args);
      p.continuation = ps.to_formula();
      break;
    }
    case AxiomKind::FC: {
      const PredAtom& a1 = inst.atoms[0];
      const PredAtom& a2 = inst.atoms[1];
      p.suc_atom_premises = {a1.to_formula(), a2.to_formula()};
      std::vector<LinTerm> s1(a1.args.begin(), a1.args.end() - 1);
      std::vector<LinTerm> s2(a2.args.begin(), a2.args.end() - 1);
      p.eq_premise = args_equal(s1, s2);
      p.continuation = eq0(a1.args.back() - a2.args.back());
      break;
    }
    case AxiomKind::AR1: {
      const PredAtom& st = inst.atoms[0];
      const PredAtom& se = inst.atoms[1];
      p.suc_atom_premises = {st.to_formula(), se.to_formula()};
      p.eq_premise = args_equal({st.args[3], st.args[1]}, {se.args[0], se.args[1]});
      p.continuation = eq0(st.args[2] - se.args[2]);
      break;
    }
    case AxiomKind::AR2: {
      const PredAtom& st = inst.atoms[0];
      const PredAtom& se1 = inst.atoms[1];
      const PredAtom& se2 = inst.atoms[2];
      p.suc_atom_premises = {st.to_formula(), se1.to_formula(), se2.to_formula()};
      p.eq_premise = args_equal({st.args[0], st.args[3], se1.args[1]},
                                {se1.args[0], se2.args[0], se2.args[1]});
      p.continuation =
          f_or(eq0(st.args[1] - se1.args[1]), eq0(se1.args[2] - se2.args[2]));
      break;
    }
    case AxiomKind::AR3: {
      const LinTerm& m1 = inst.inst_terms[0];
      const LinTerm& m2 = inst.inst_terms[1];
      std::string y = gen.fresh_var(), z1 = gen.fresh_var(), z2 = gen.fresh_var();
      Formula counterex = close_under(
          {y, z1, z2},
          mk_and({pred_app("select", {m1, LinTerm(y), LinTerm(z1)}, true),
                  pred_app("select", {m2, LinTerm(y), LinTerm(z2)}, true),
                  f_not(eq0(LinTerm(z1) - LinTerm(z2)))}),
          false);
      p.suc_atom_premises = {};
      p.eq_premise = f_true();
      p.continuation = f_or(counterex, eq0(m1 - m2));
      break;
    }
  }
  return p;
}

}  // namespace itp
