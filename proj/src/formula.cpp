#include "itp/formula.hpp"

#include <cassert>
#include <stdexcept>

namespace itp {

Formula Formula::make(FNode n) {
  Formula f;
  f.n_ = std::make_shared<const FNode>(std::move(n));
  return f;
}

bool Formula::is_true() const { return kind() == FKind::EqZero && term().is_zero(); }

bool Formula::is_false() const {
  return kind() == FKind::EqZero && term().is_const() && term().const_part() != 0;
}

bool Formula::is_atom() const {
  switch (kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Divides:
    case FKind::Pred:
      return true;
    default:
      return false;
  }
}

bool Formula::is_literal() const {
  return is_atom() || (kind() == FKind::Not && kid(0).is_atom());
}

bool Formula::operator==(const Formula& o) const {
  if (n_ == o.n_) return true;
  if (!n_ || !o.n_) return false;
  if (n_->kind != o.n_->kind) return false;
  switch (n_->kind) {
    case FKind::EqZero:
    case FKind::LeqZero:
      return n_->term == o.n_->term;
    case FKind::Divides:
      return n_->modulus == o.n_->modulus && n_->term == o.n_->term;
    case FKind::Pred:
      return n_->pred == o.n_->pred && n_->graph == o.n_->graph && n_->args == o.n_->args;
    case FKind::Not:
      return n_->kids[0] == o.n_->kids[0];
    case FKind::And:
    case FKind::Or:
      return n_->kids == o.n_->kids;
    case FKind::Forall:
    case FKind::Exists:
      return n_->var == o.n_->var && n_->kids[0] == o.n_->kids[0];
  }
  return false;
}

bool Formula::operator<(const Formula& o) const {
  if (n_ == o.n_) return false;
  if (n_->kind != o.n_->kind) return n_->kind < o.n_->kind;
  switch (n_->kind) {
    case FKind::EqZero:
    case FKind::LeqZero:
      return n_->term < o.n_->term;
    case FKind::Divides:
      if (n_->modulus != o.n_->modulus) return n_->modulus < o.n_->modulus;
      return n_->term < o.n_->term;
    case FKind::Pred:
      if (n_->pred != o.n_->pred) return n_->pred < o.n_->pred;
      if (n_->graph != o.n_->graph) return n_->graph < o.n_->graph;
      return std::lexicographical_compare(
          n_->args.begin(), n_->args.end(), o.n_->args.begin(), o.n_->args.end(),
          [](const LinTerm& x, const LinTerm& y) { return x < y; });
    case FKind::Not:
      return n_->kids[0] < o.n_->kids[0];
    case FKind::And:
    case FKind::Or: {
      return std::lexicographical_compare(n_->kids.begin(), n_->kids.end(),
                                          o.n_->kids.begin(), o.n_->kids.end());
    }
    case FKind::Forall:
    case FKind::Exists:
      if (n_->var != o.n_->var) return n_->var < o.n_->var;
      return n_->kids[0] < o.n_->kids[0];
  }
  return false;
}

Formula f_true() { return eq0(LinTerm()); }
Formula f_false() { return eq0(LinTerm(Int(1))); }

Formula eq0(LinTerm t) {
  FNode n;
  n.kind = FKind::EqZero;
  n.term = std::move(t);
  return Formula::make(std::move(n));
}

Formula leq0(LinTerm t) {
  if (t.is_const()) return t.const_part() <= 0 ? f_true() : f_false();
  FNode n;
  n.kind = FKind::LeqZero;
  n.term = std::move(t);
  return Formula::make(std::move(n));
}

Formula divides(Int modulus, LinTerm t) {
  if (modulus == 0) throw std::invalid_argument("divides: modulus must be nonzero");
  if (modulus < 0) modulus = -modulus;
  if (modulus == 1) return f_true();
  if (t.is_const()) return t.const_part() % modulus == 0 ? f_true() : f_false();
  // sign-normalize: leading coefficient positive (k | t  <=>  k | -t)
  bool neg;
  if (!t.coeffs().empty()) {
    neg = t.coeffs().begin()->second < 0;
  } else {
    neg = t.fun_apps().front().second < 0;
  }
  if (neg) t = -t;
  FNode n;
  n.kind = FKind::Divides;
  n.modulus = std::move(modulus);
  n.term = std::move(t);
  return Formula::make(std::move(n));
}

Formula pred_app(std::string name, std::vector<LinTerm> args, bool graph) {
  FNode n;
  n.kind = FKind::Pred;
  n.pred = std::move(name);
  n.graph = graph;
  n.args = std::move(args);
  return Formula::make(std::move(n));
}

Formula f_not(Formula a) {
  if (a.is_true()) return f_false();
  if (a.is_false()) return f_true();
  if (a.kind() == FKind::Not) return a.kid(0);
  FNode n;
  n.kind = FKind::Not;
  n.kids.push_back(std::move(a));
  return Formula::make(std::move(n));
}

Formula f_and(Formula a, Formula b) {
  if (a.is_false() || b.is_false()) return f_false();
  if (a.is_true()) return b;
  if (b.is_true()) return a;
  FNode n;
  n.kind = FKind::And;
  n.kids.push_back(std::move(a));
  n.kids.push_back(std::move(b));
  return Formula::make(std::move(n));
}

Formula f_or(Formula a, Formula b) {
  if (a.is_true() || b.is_true()) return f_true();
  if (a.is_false()) return b;
  if (b.is_false()) return a;
  FNode n;
  n.kind = FKind::Or;
  n.kids.push_back(std::move(a));
  n.kids.push_back(std::move(b));
  return Formula::make(std::move(n));
}

Formula mk_and(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_true();
  Formula r = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) r = f_and(fs[i], r);
  return r;
}

Formula mk_or(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_false();
  Formula r = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) r = f_or(fs[i], r);
  return r;
}

Formula forall(std::string var, Formula body) {
  if (!contains_sym(body, var)) return body;
  FNode n;
  n.kind = FKind::Forall;
  n.var = std::move(var);
  n.kids.push_back(std::move(body));
  return Formula::make(std::move(n));
}

Formula exists(std::string var, Formula body) {
  if (!contains_sym(body, var)) return body;
  FNode n;
  n.kind = FKind::Exists;
  n.var = std::move(var);
  n.kids.push_back(std::move(body));
  return Formula::make(std::move(n));
}

namespace {

void collect_syms_rec(const Formula& f, std::set<std::string, SymLess>& bound,
                      SymbolSet& out) {
  switch (f.kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Divides: {
      std::set<std::string, SymLess> s;
      f.term().collect_symbols(s);
      for (const auto& x : s)
        if (!bound.count(x)) out.consts.insert(x);
      f.term().collect_funs(out.funs);
      break;
    }
    case FKind::Pred: {
      if (f.graph()) {
        out.funs.insert(f.pred());
      } else {
        out.preds.insert(f.pred());
      }
      for (const auto& a : f.args()) {
        std::set<std::string, SymLess> s;
        a.collect_symbols(s);
        for (const auto& x : s)
          if (!bound.count(x)) out.consts.insert(x);
        a.collect_funs(out.funs);
      }
      break;
    }
    case FKind::Not:
    case FKind::And:
    case FKind::Or:
      for (const auto& k : f.kids()) collect_syms_rec(k, bound, out);
      break;
    case FKind::Forall:
    case FKind::Exists: {
      bool inserted = bound.insert(f.var()).second;
      collect_syms_rec(f.body(), bound, out);
      if (inserted) bound.erase(f.var());
      break;
    }
  }
}

}  // namespace

SymbolSet free_symbols(const Formula& f) {
  SymbolSet out;
  std::set<std::string, SymLess> bound;
  collect_syms_rec(f, bound, out);
  return out;
}

void collect_free_consts(const Formula& f, std::set<std::string, SymLess>& out) {
  SymbolSet s = free_symbols(f);
  out.insert(s.consts.begin(), s.consts.end());
}

bool contains_sym(const Formula& f, const std::string& s) {
  switch (f.kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Divides:
      return f.term().contains_sym(s);
    case FKind::Pred:
      for (const auto& a : f.args())
        if (a.contains_sym(s)) return true;
      return false;
    case FKind::Not:
    case FKind::And:
    case FKind::Or:
      for (const auto& k : f.kids())
        if (contains_sym(k, s)) return true;
      return false;
    case FKind::Forall:
    case FKind::Exists:
      if (f.var() == s) return false;
      return contains_sym(f.body(), s);
  }
  return false;
}

bool has_quantifier(const Formula& f) {
  switch (f.kind()) {
    case FKind::Forall:
    case FKind::Exists:
      return true;
    case FKind::Not:
    case FKind::And:
    case FKind::Or:
      for (const auto& k : f.kids())
        if (has_quantifier(k)) return true;
      return false;
    default:
      return false;
  }
}

namespace {
bool term_has_div(const LinTerm& t) {
  for (const auto& [a, c] : t.fun_apps()) {
    if (a.is_div()) return true;
    for (const auto& arg : a.args)
      if (term_has_div(arg)) return true;
  }
  return false;
}
bool term_has_fun(const LinTerm& t) {
  for (const auto& [a, c] : t.fun_apps()) {
    if (!a.is_div()) return true;
    for (const auto& arg : a.args)
      if (term_has_fun(arg)) return true;
  }
  return false;
}
}  // namespace

bool has_div_terms(const Formula& f) {
  switch (f.kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Divides:
      return term_has_div(f.term());
    case FKind::Pred:
      for (const auto& a : f.args())
        if (term_has_div(a)) return true;
      return false;
    default:
      for (const auto& k : f.kids())
        if (has_div_terms(k)) return true;
      return false;
  }
}

bool has_fun_apps(const Formula& f) {
  switch (f.kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Divides:
      return term_has_fun(f.term());
    case FKind::Pred:
      for (const auto& a : f.args())
        if (term_has_fun(a)) return true;
      return false;
    default:
      for (const auto& k : f.kids())
        if (has_fun_apps(k)) return true;
      return false;
  }
}

Formula substitute(const Formula& f, const std::string& x, const LinTerm& t) {
  switch (f.kind()) {
    case FKind::EqZero:
      return eq0(f.term().subst(x, t));
    case FKind::LeqZero:
      return leq0(f.term().subst(x, t));
    case FKind::Divides:
      return divides(f.modulus(), f.term().subst(x, t));
    case FKind::Pred: {
      std::vector<LinTerm> na;
      na.reserve(f.args().size());
      for (const auto& a : f.args()) na.push_back(a.subst(x, t));
      return pred_app(f.pred(), std::move(na), f.graph());
    }
    case FKind::Not:
      return f_not(substitute(f.kid(0), x, t));
    case FKind::And:
      return f_and(substitute(f.kid(0), x, t), substitute(f.kid(1), x, t));
    case FKind::Or:
      return f_or(substitute(f.kid(0), x, t), substitute(f.kid(1), x, t));
    case FKind::Forall:
    case FKind::Exists: {
      if (f.var() == x) return f;  // shadowed
      assert(!t.contains_sym(f.var()) && "capture: bound variables must be fresh");
      Formula nb = substitute(f.body(), x, t);
      FNode n;
      n.kind = f.kind();
      n.var = f.var();
      n.kids.push_back(std::move(nb));
      return Formula::make(std::move(n));
    }
  }
  return f;
}

Formula nnf(const Formula& f) {
  switch (f.kind()) {
    case FKind::EqZero:
    case FKind::LeqZero:
    case FKind::Divides:
    case FKind::Pred:
      return f;
    case FKind::Not:
      return negate_nnf(f.kid(0));
    case FKind::And:
      return f_and(nnf(f.kid(0)), nnf(f.kid(1)));
    case FKind::Or:
      return f_or(nnf(f.kid(0)), nnf(f.kid(1)));
    case FKind::Forall:
      return forall(f.var(), nnf(f.body()));
    case FKind::Exists:
      return exists(f.var(), nnf(f.body()));
  }
  return f;
}

Formula negate_nnf(const Formula& f) {
  switch (f.kind()) {
    case FKind::EqZero:
    case FKind::Divides:
    case FKind::Pred:
      return f_not(f);
    case FKind::LeqZero:
      // not (t <= 0)  <=>  -t + 1 <= 0
      return leq0(-f.term() + LinTerm(Int(1)));
    case FKind::Not:
      return nnf(f.kid(0));
    case FKind::And:
      return f_or(negate_nnf(f.kid(0)), negate_nnf(f.kid(1)));
    case FKind::Or:
      return f_and(negate_nnf(f.kid(0)), negate_nnf(f.kid(1)));
    case FKind::Forall:
      return exists(f.var(), negate_nnf(f.body()));
    case FKind::Exists:
      return forall(f.var(), negate_nnf(f.body()));
  }
  return f;
}

std::vector<Formula> flatten(const Formula& f, FKind k) {
  std::vector<Formula> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.kind() == k) {
      stack.push_back(g.kid(1));
      stack.push_back(g.kid(0));
    } else {
      out.push_back(g);
    }
  }
  return out;
}

std::optional<Guarded> match_guarded_forall(const Formula& f) {
  if (f.kind() != FKind::Forall) return std::nullopt;
  const std::string& x = f.var();
  std::vector<Formula> disj = flatten(f.body(), FKind::Or);
  for (size_t i = 0; i < disj.size(); ++i) {
    const Formula& d = disj[i];
    if (d.kind() != FKind::Not || d.kid(0).kind() != FKind::EqZero) continue;
    const LinTerm& u = d.kid(0).term();
    Int alpha = u.coeff_of(x);
    if (alpha == 0) continue;
    LinTerm t = u - LinTerm::sym(x, alpha);
    if (t.contains_sym(x)) continue;  // x inside a function argument
    std::vector<Formula> rest;
    for (size_t j = 0; j < disj.size(); ++j)
      if (j != i) rest.push_back(disj[j]);
    return Guarded{x, alpha, t, mk_or(rest)};
  }
  return std::nullopt;
}

std::optional<Guarded> match_guarded_exists(const Formula& f) {
  if (f.kind() != FKind::Exists) return std::nullopt;
  const std::string& x = f.var();
  std::vector<Formula> conj = flatten(f.body(), FKind::And);
  for (size_t i = 0; i < conj.size(); ++i) {
    const Formula& c = conj[i];
    if (c.kind() != FKind::EqZero) continue;
    const LinTerm& u = c.term();
    Int alpha = u.coeff_of(x);
    if (alpha == 0) continue;
    LinTerm t = u - LinTerm::sym(x, alpha);
    if (t.contains_sym(x)) continue;
    std::vector<Formula> rest;
    for (size_t j = 0; j < conj.size(); ++j)
      if (j != i) rest.push_back(conj[j]);
    return Guarded{x, alpha, t, mk_and(rest)};
  }
  return std::nullopt;
}

std::optional<RelBound> match_rel_exists(const Formula& f) {
  if (f.kind() != FKind::Exists) return std::nullopt;
  const std::string& x = f.var();
  std::vector<Formula> conj = flatten(f.body(), FKind::And);
  for (size_t i = 0; i < conj.size(); ++i) {
    const Formula& c = conj[i];
    if (c.kind() != FKind::Pred || !c.graph() || c.args().empty()) continue;
    const LinTerm& res = c.args().back();
    if (!(res == LinTerm(x))) continue;
    bool x_in_args = false;
    for (size_t k = 0; k + 1 < c.args().size(); ++k)
      if (c.args()[k].contains_sym(x)) x_in_args = true;
    if (x_in_args) continue;
    std::vector<Formula> rest;
    for (size_t j = 0; j < conj.size(); ++j)
      if (j != i) rest.push_back(conj[j]);
    return RelBound{x, c, mk_and(rest)};
  }
  return std::nullopt;
}

}  // namespace itp
