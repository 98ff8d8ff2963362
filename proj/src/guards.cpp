#include "itp/guards.hpp"

#include <functional>

#include "itp/matrix.hpp"

namespace itp {

const char* frag_name(Frag f) {
  switch (f) {
    case Frag::QF_PA: return "QF-PA";
    case Frag::PAID: return "PAID";
    case Frag::PAID_UP: return "PAID+UP";
    case Frag::PAID_UFP: return "PAID+UF_p";
    case Frag::PAID_UF: return "PAID+UF";
    case Frag::GENERAL: return "GENERAL";
  }
  return "?";
}

namespace {

struct Block {
  bool is_forall;
  std::vector<std::string> vars;
  Formula matrix;
};

Block collect_block(const Formula& f) {
  Block b;
  b.is_forall = f.kind() == FKind::Forall;
  Formula g = f;
  while (g.kind() == f.kind()) {
    b.vars.push_back(g.var());
    g = g.body();
  }
  b.matrix = g;
  return b;
}

// One quantifier block normalized; children already processed.
Formula normalize_block(const Formula& f, SymbolGen& gen) {
  Block b = collect_block(f);
  bool uni = b.is_forall;
  int n = int(b.vars.size());

  std::vector<Formula> parts = flatten(b.matrix, uni ? FKind::Or : FKind::And);
  std::vector<LinTerm> rows;
  std::vector<Formula> rest;
  for (const auto& p : parts) {
    const Formula* eq = nullptr;
    if (uni) {
      if (p.kind() == FKind::Not && p.kid(0).kind() == FKind::EqZero) eq = &p.kid(0);
    } else {
      if (p.kind() == FKind::EqZero) eq = &p;
    }
    bool is_guard = false;
    if (eq) {
      const LinTerm& u = eq->term();
      LinTerm tail = u;
      bool mentions = false, clean = true;
      for (const auto& x : b.vars) {
        Int a = u.coeff_of(x);
        if (a != 0) mentions = true;
        tail = tail - LinTerm::sym(x, a);
      }
      for (const auto& x : b.vars)
        if (tail.contains_sym(x)) clean = false;  // variable inside an application
      if (mentions && clean) {
        rows.push_back(u);
        is_guard = true;
      }
    }
    if (!is_guard) rest.push_back(p);
  }
  if (rows.empty()) return f;

  // single variable with a single guard row is already form (2)
  if (n == 1 && rows.size() == 1) return f;

  int k = int(rows.size());
  IntMatrix c(k, n);
  std::vector<LinTerm> uprime(k);
  for (int i = 0; i < k; ++i) {
    LinTerm tail = rows[i];
    for (int j = 0; j < n; ++j) {
      c.at(i, j) = rows[i].coeff_of(b.vars[j]);
      tail = tail - LinTerm::sym(b.vars[j], c.at(i, j));
    }
    uprime[i] = tail;
  }
  SmithFull sf = smith_decompose_full(c);
  int r = int(sf.t.diag.size());

  // w = Linv * uprime
  std::vector<LinTerm> w(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) w[i] += uprime[j] * sf.Linv.at(i, j);

  // x_j = sum_i Rinv(j,i) * y_i with fresh y
  std::vector<std::string> ys;
  for (int i = 0; i < n; ++i) ys.push_back(gen.fresh_var());
  Formula psi = uni ? mk_or(rest) : mk_and(rest);
  for (int j = 0; j < n; ++j) {
    LinTerm repl;
    for (int i = 0; i < n; ++i) repl += LinTerm::sym(ys[i], sf.Rinv.at(j, i));
    psi = substitute(psi, b.vars[j], repl);
  }
  // unguarded leftover variables make the block unnormalizable
  for (int i = r; i < n; ++i)
    if (contains_sym(psi, ys[i])) return f;

  // innermost body, wrapped by guarded quantifiers y_r .. y_1
  Formula body = psi;
  for (int i = r - 1; i >= 0; --i) {
    LinTerm guard = LinTerm::sym(ys[i], sf.t.diag[i]) + w[i];
    if (uni) {
      body = forall(ys[i], f_or(f_not(eq0(guard)), body));
    } else {
      body = exists(ys[i], f_and(eq0(guard), body));
    }
  }
  // residual rows r+1..k
  std::vector<Formula> out{body};
  for (int i = r; i < k; ++i)
    out.push_back(uni ? f_not(eq0(w[i])) : eq0(w[i]));
  return uni ? mk_or(out) : mk_and(out);
}

}  // namespace

Formula normalize_guards(const Formula& f, SymbolGen& gen) {
  switch (f.kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Divides:
    case FKind::Pred:
      return f;
    case FKind::Not:
      return f_not(normalize_guards(f.kid(0), gen));
    case FKind::And:
      return f_and(normalize_guards(f.kid(0), gen), normalize_guards(f.kid(1), gen));
    case FKind::Or:
      return f_or(normalize_guards(f.kid(0), gen), normalize_guards(f.kid(1), gen));
    case FKind::Forall:
    case FKind::Exists: {
      // normalize below the block first
      Block b = collect_block(f);
      Formula matrix = normalize_guards(b.matrix, gen);
      Formula g = matrix;
      for (auto it = b.vars.rbegin(); it != b.vars.rend(); ++it)
        g = f.kind() == FKind::Forall ? forall(*it, g) : exists(*it, g);
      if (g.kind() != f.kind()) return g;  // vars dropped by simplification
      return normalize_block(g, gen);
    }
  }
  return f;
}

namespace {

LinTerm replace_div_term(const LinTerm& t, const FunApp& app, const LinTerm& repl) {
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
    for (const auto& arg : a.args) na.args.push_back(replace_div_term(arg, app, repl));
    r.add_app(na, c);
  }
  return r;
}

const FunApp* innermost_div(const LinTerm& t) {
  for (const auto& [a, c] : t.fun_apps()) {
    for (const auto& arg : a.args)
      if (const FunApp* inner = innermost_div(arg)) return inner;
    if (a.is_div()) return &a;
  }
  return nullptr;
}

const FunApp* literal_div(const Formula& lit) {
  const Formula& atom = lit.kind() == FKind::Not ? lit.kid(0) : lit;
  switch (atom.kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Divides:
      return innermost_div(atom.term());
    case FKind::Pred:
      for (const auto& a : atom.args())
        if (const FunApp* d = innermost_div(a)) return d;
      return nullptr;
    default:
      return nullptr;
  }
}

Formula replace_div_formula(const Formula& f, const FunApp& app, const LinTerm& repl) {
  switch (f.kind()) {
    case FKind::EqZero:
      return eq0(replace_div_term(f.term(), app, repl));
    case FKind::LeqZero:
      return leq0(replace_div_term(f.term(), app, repl));
    case FKind::Divides:
      return divides(f.modulus(), replace_div_term(f.term(), app, repl));
    case FKind::Pred: {
      std::vector<LinTerm> na;
      for (const auto& a : f.args()) na.push_back(replace_div_term(a, app, repl));
      return pred_app(f.pred(), std::move(na), f.graph());
    }
    case FKind::Not:
      return f_not(replace_div_formula(f.kid(0), app, repl));
    default:
      return f;
  }
}

Formula expand_divs_in_literal(const Formula& lit, SymbolGen& gen) {
  const FunApp* d = literal_div(lit);
  if (!d) return lit;
  FunApp app = *d;
  if (app.den <= 0) throw ZeroDivisor();
  std::string q = gen.fresh_var();
  std::vector<Formula> cases;
  for (Int r(0); r < app.den; ++r) {
    LinTerm guard = LinTerm::sym(q, app.den) - app.args[0] + LinTerm(r);
    Formula inner = expand_divs_in_literal(replace_div_formula(lit, app, LinTerm(q)), gen);
    cases.push_back(exists(q, f_and(eq0(guard), inner)));
  }
  return mk_or(cases);
}

}  // namespace

Formula to_div_form(const Formula& f, bool rewrite_divides) {
  switch (f.kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Pred:
      return f;
    case FKind::Divides: {
      if (!rewrite_divides) return f;
      // (a | t)  ==  a*(t div a) = t
      LinTerm dt(FunApp::div(f.term(), f.modulus()));
      return eq0(dt * f.modulus() - f.term());
    }
    case FKind::Not:
      return f_not(to_div_form(f.kid(0), rewrite_divides));
    case FKind::And:
      return f_and(to_div_form(f.kid(0), rewrite_divides), to_div_form(f.kid(1), rewrite_divides));
    case FKind::Or:
      return f_or(to_div_form(f.kid(0), rewrite_divides), to_div_form(f.kid(1), rewrite_divides));
    case FKind::Forall: {
      if (auto gd = match_guarded_forall(f)) {
        Int alpha = gd->alpha;
        LinTerm t = gd->t;
        if (alpha < 0) {
          alpha = -alpha;
          t = -t;
        }
        LinTerm sol = alpha == 1 ? -t : LinTerm(FunApp::div(-t, alpha));
        Formula sub = to_div_form(substitute(gd->rest, gd->var, sol), rewrite_divides);
        Formula nd = f_not(divides(alpha, t));
        if (rewrite_divides) nd = to_div_form(f_not(divides(alpha, t)), true);
        return f_or(nd, sub);
      }
      FNode n;
      n.kind = f.kind();
      n.var = f.var();
      n.kids.push_back(to_div_form(f.body(), rewrite_divides));
      return Formula::make(std::move(n));
    }
    case FKind::Exists: {
      if (auto gd = match_guarded_exists(f)) {
        Int alpha = gd->alpha;
        LinTerm t = gd->t;
        if (alpha < 0) {
          alpha = -alpha;
          t = -t;
        }
        LinTerm sol = alpha == 1 ? -t : LinTerm(FunApp::div(-t, alpha));
        Formula sub = to_div_form(substitute(gd->rest, gd->var, sol), rewrite_divides);
        Formula dv = divides(alpha, t);
        if (rewrite_divides) dv = to_div_form(dv, true);
        return f_and(dv, sub);
      }
      if (auto rb = match_rel_exists(f)) {
        FNode n;
        n.kind = f.kind();
        n.var = f.var();
        n.kids.push_back(to_div_form(f.body(), rewrite_divides));
        return Formula::make(std::move(n));
      }
      FNode n;
      n.kind = f.kind();
      n.var = f.var();
      n.kids.push_back(to_div_form(f.body(), rewrite_divides));
      return Formula::make(std::move(n));
    }
  }
  return f;
}

Formula from_div_form(const Formula& f) {
  SymbolGen gen;
  gen.next = 1u << 20;  // avoid clashing with problem-generated names
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (g.is_literal()) return expand_divs_in_literal(g, gen);
    switch (g.kind()) {
      case FKind::Not:
        return f_not(go(g.kid(0)));
      case FKind::And:
        return f_and(go(g.kid(0)), go(g.kid(1)));
      case FKind::Or:
        return f_or(go(g.kid(0)), go(g.kid(1)));
      case FKind::Forall:
      case FKind::Exists: {
        FNode n;
        n.kind = g.kind();
        n.var = g.var();
        n.kids.push_back(go(g.body()));
        return Formula::make(std::move(n));
      }
      default:
        return g;
    }
  };
  return go(nnf(f));
}

namespace {

void classify_rec(const Formula& f, bool& general, bool& quant, bool& preds, bool& graphs,
                  bool& funs) {
  switch (f.kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Divides:
      if (has_fun_apps(f)) funs = true;
      return;
    case FKind::Pred:
      if (f.graph())
        graphs = true;
      else
        preds = true;
      if (has_fun_apps(f)) funs = true;
      return;
    case FKind::Not:
    case FKind::And:
    case FKind::Or:
      for (const auto& k : f.kids()) classify_rec(k, general, quant, preds, graphs, funs);
      return;
    case FKind::Forall: {
      quant = true;
      if (!match_guarded_forall(f)) general = true;
      classify_rec(f.body(), general, quant, preds, graphs, funs);
      return;
    }
    case FKind::Exists: {
      quant = true;
      if (!match_guarded_exists(f) && !match_rel_exists(f)) general = true;
      classify_rec(f.body(), general, quant, preds, graphs, funs);
      return;
    }
  }
}

}  // namespace

Frag classify_fragment(const Formula& f) {
  bool general = false, quant = false, preds = false, graphs = false, funs = false;
  classify_rec(f, general, quant, preds, graphs, funs);
  if (general) return Frag::GENERAL;
  if (funs) return Frag::PAID_UF;
  if (graphs) return Frag::PAID_UFP;
  if (preds) return Frag::PAID_UP;
  if (quant) return Frag::PAID;
  return Frag::QF_PA;
}

}  // namespace itp
