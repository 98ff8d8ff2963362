#include "itp/eval.hpp"

#include <cassert>

#include "itp/matrix.hpp"

namespace itp {

void BoundedEval::tick() {
  if (++used_ > budget_) throw EvalBudgetExceeded();
}

Int BoundedEval::eval_term(const LinTerm& t, Model& m) {
  Int v = t.const_part();
  for (const auto& [s, c] : t.coeffs()) {
    auto it = m.consts.find(s);
    if (it == m.consts.end()) {
      if (searching_) throw NeedChoice{{Pending::ConstV, s, {}}};
      throw std::runtime_error("eval: unassigned symbol " + s);
    }
    v += c * it->second;
  }
  for (const auto& [a, c] : t.fun_apps()) {
    if (a.is_div()) {
      Int num = eval_term(a.args[0], m);
      v += c * floor_div(num, a.den);
      continue;
    }
    std::vector<Int> tuple;
    tuple.reserve(a.args.size());
    for (const auto& arg : a.args) tuple.push_back(eval_term(arg, m));
    auto ft = m.funs.find(a.fun);
    if (ft != m.funs.end()) {
      auto e = ft->second.find(tuple);
      if (e != ft->second.end()) {
        v += c * e->second;
        continue;
      }
    }
    if (searching_) throw NeedChoice{{Pending::FunE, a.fun, tuple}};
    throw std::runtime_error("eval: no table entry for function " + a.fun);
  }
  return v;
}

namespace {

// Flat quantifier chain of one kind.
struct Chain {
  std::vector<std::string> vars;
  Formula body;
};

Chain collect_chain(const Formula& f) {
  Chain c;
  FKind k = f.kind();
  Formula g = f;
  while (g.kind() == k) {
    c.vars.push_back(g.var());
    g = g.body();
  }
  c.body = g;
  return c;
}

}  // namespace

bool BoundedEval::eval_quant(const Formula& f, Model& m) {
  bool is_forall = f.kind() == FKind::Forall;
  Chain ch = collect_chain(f);

  // Guard rows: for forall, disjuncts (u != 0); for exists, conjuncts (u == 0),
  // where u mentions a chain variable linearly and nowhere else.
  std::vector<Formula> parts = flatten(ch.body, is_forall ? FKind::Or : FKind::And);
  std::vector<LinTerm> rows;
  for (const auto& p : parts) {
    const Formula* eq = nullptr;
    if (is_forall) {
      if (p.kind() == FKind::Not && p.kid(0).kind() == FKind::EqZero) eq = &p.kid(0);
    } else {
      if (p.kind() == FKind::EqZero) eq = &p;
    }
    if (!eq) continue;
    const LinTerm& u = eq->term();
    bool mentions = false, clean = true;
    LinTerm rest = u;
    for (const auto& x : ch.vars) {
      Int a = u.coeff_of(x);
      if (a != 0) mentions = true;
      rest = rest - LinTerm::sym(x, a);
      if (rest.contains_sym(x)) clean = false;  // inside a function argument
    }
    if (mentions && clean) rows.push_back(u);
  }

  int n = int(ch.vars.size());
  int k = int(rows.size());
  if (k > 0) {
    IntMatrix c(k, n);
    std::vector<Int> b(k);
    bool ground = true;
    for (int i = 0; i < k && ground; ++i) {
      LinTerm rest = rows[i];
      for (int j = 0; j < n; ++j) {
        c.at(i, j) = rows[i].coeff_of(ch.vars[j]);
        rest = rest - LinTerm::sym(ch.vars[j], c.at(i, j));
      }
      for (const auto& x : ch.vars)
        if (rest.contains_sym(x)) ground = false;
      if (ground) b[i] = eval_term(rest, m);
    }
    if (ground) {
      SmithFull sf = smith_decompose_full(c);
      int r = int(sf.t.diag.size());
      // S * y = Linv * (-b)
      std::vector<Int> rhs(k, Int(0));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) rhs[i] += sf.Linv.at(i, j) * (-b[j]);
      bool consistent = true;
      for (int i = r; i < k; ++i)
        if (rhs[i] != 0) consistent = false;
      std::vector<Int> y(n, Int(0));
      for (int i = 0; i < r && consistent; ++i) {
        if (rhs[i] % sf.t.diag[i] != 0)
          consistent = false;
        else
          y[i] = rhs[i] / sf.t.diag[i];
      }
      if (!consistent) return is_forall;
      if (r == n) {
        // unique solution x = Rinv^{-1}... x satisfies y = R x, so x = R^{-1} y = Rinv y
        std::vector<Int> x(n, Int(0));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) x[i] += sf.Rinv.at(i, j) * y[j];
        std::vector<std::pair<std::string, bool>> saved;
        std::vector<Int> old;
        for (int i = 0; i < n; ++i) {
          auto it = m.consts.find(ch.vars[i]);
          saved.emplace_back(ch.vars[i], it != m.consts.end());
          old.push_back(it != m.consts.end() ? it->second : Int(0));
          m.consts[ch.vars[i]] = x[i];
        }
        bool res = eval_rec(ch.body, m);
        for (int i = 0; i < n; ++i) {
          if (saved[i].second)
            m.consts[saved[i].first] = old[i];
          else
            m.consts.erase(saved[i].first);
        }
        return res;
      }
    }
  }

  // Fallback: range the outermost variable over [-bound, bound].
  approx_used_ = true;
  const std::string& x = f.var();
  auto it = m.consts.find(x);
  bool had = it != m.consts.end();
  Int old = had ? it->second : Int(0);
  bool result = is_forall;
  for (Int v = -bound_; v <= bound_; ++v) {
    tick();
    m.consts[x] = v;
    bool r = eval_rec(f.body(), m);
    if (is_forall && !r) {
      result = false;
      break;
    }
    if (!is_forall && r) {
      result = true;
      break;
    }
  }
  if (had)
    m.consts[x] = old;
  else
    m.consts.erase(x);
  return result;
}

bool BoundedEval::eval_rec(const Formula& f, Model& m) {
  tick();
  switch (f.kind()) {
    case FKind::EqZero:
      return eval_term(f.term(), m) == 0;
    case FKind::LeqZero:
      return eval_term(f.term(), m) <= 0;
    case FKind::Divides:
      return eval_term(f.term(), m) % f.modulus() == 0;
    case FKind::Pred: {
      std::vector<Int> tuple;
      tuple.reserve(f.args().size());
      for (const auto& a : f.args()) tuple.push_back(eval_term(a, m));
      if (f.graph()) {
        auto ft = m.funs.find(f.pred());
        if (ft != m.funs.end()) {
          std::vector<Int> args(tuple.begin(), tuple.end() - 1);
          auto e = ft->second.find(args);
          if (e != ft->second.end()) return e->second == tuple.back();
          if (searching_) throw NeedChoice{{Pending::FunE, f.pred(), args}};
          throw std::runtime_error("eval: no table entry for function " + f.pred());
        }
      }
      auto& tabs = f.graph() ? m.graphs : m.preds;
      auto pt = tabs.find(f.pred());
      if (pt != tabs.end() && pt->second.count(tuple)) return true;
      auto neg = tabs.find("!" + f.pred());
      bool decided_false = neg != tabs.end() && neg->second.count(tuple);
      if (!decided_false && searching_)
        throw NeedChoice{{f.graph() ? Pending::GraphE : Pending::PredE, f.pred(), tuple}};
      return false;
    }
    case FKind::Not:
      return !eval_rec(f.kid(0), m);
    case FKind::And:
      return eval_rec(f.kid(0), m) && eval_rec(f.kid(1), m);
    case FKind::Or:
      return eval_rec(f.kid(0), m) || eval_rec(f.kid(1), m);
    case FKind::Forall:
    case FKind::Exists:
      return eval_quant(f, m);
  }
  return false;
}

bool BoundedEval::eval(const Formula& f, Model& m) {
  searching_ = false;
  return eval_rec(f, m);
}

bool BoundedEval::search_rec(const Formula& f, Model& m) {
  Pending p;
  try {
    return eval_rec(f, m);
  } catch (NeedChoice& nc) {
    p = nc.p;
  }
  switch (p.kind) {
    case Pending::ConstV: {
      for (Int v = -bound_; v <= bound_; ++v) {
        tick();
        m.consts[p.name] = v;
        if (search_rec(f, m)) return true;
      }
      m.consts.erase(p.name);
      return false;
    }
    case Pending::FunE: {
      for (Int v = -bound_; v <= bound_; ++v) {
        tick();
        m.funs[p.name][p.tuple] = v;
        if (search_rec(f, m)) return true;
      }
      m.funs[p.name].erase(p.tuple);
      return false;
    }
    case Pending::PredE:
    case Pending::GraphE: {
      auto& tabs = p.kind == Pending::PredE ? m.preds : m.graphs;
      // false first, then true
      tabs["!" + p.name].insert(p.tuple);
      if (search_rec(f, m)) return true;
      tabs["!" + p.name].erase(p.tuple);
      tabs[p.name].insert(p.tuple);
      if (search_rec(f, m)) return true;
      tabs[p.name].erase(p.tuple);
      return false;
    }
  }
  return false;
}

std::optional<Model> BoundedEval::search(const Formula& f) { return search_from(f, Model{}); }

std::optional<Model> BoundedEval::search_from(const Formula& f, Model seed) {
  searching_ = true;
  Model m = std::move(seed);
  bool ok = search_rec(f, m);
  searching_ = false;
  if (!ok) return std::nullopt;
  // strip negative-entry bookkeeping
  for (auto it = m.preds.begin(); it != m.preds.end();)
    it = it->first.rfind('!', 0) == 0 ? m.preds.erase(it) : std::next(it);
  for (auto it = m.graphs.begin(); it != m.graphs.end();)
    it = it->first.rfind('!', 0) == 0 ? m.graphs.erase(it) : std::next(it);
  return m;
}

bool BoundedEval::equivalent(const Formula& a, const Formula& b) {
  if (search(f_and(a, f_not(b)))) return false;
  if (search(f_and(f_not(a), b))) return false;
  return true;
}

}  // namespace itp
