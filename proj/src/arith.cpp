#include "itp/arith.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "itp/matrix.hpp"

namespace itp {

ReduceCert SolvedEqSystem::reduce(const LinTerm& u) const {
  ReduceCert c;
  c.residue = u;
  c.mu = 1;
  for (size_t i = 0; i < rows.size(); ++i) {
    const SolvedRow& r = rows[i];
    Int gamma = c.residue.coeff_of(r.pivot);
    if (gamma == 0) continue;
    Int g = gcd(gamma, r.alpha);
    Int scale = r.alpha / g;      // positive
    Int rowmul = -(gamma / g);
    c.residue = c.residue * scale + r.lit() * rowmul;
    c.apart_delta = c.apart_delta * scale + r.apart * rowmul;
    c.mu *= scale;
    for (auto& [idx, l] : c.lambdas) l *= scale;
    c.lambdas.emplace_back(int(i), rowmul);
    assert(c.residue.coeff_of(r.pivot) == 0);
  }
  return c;
}

bool entails_equality(const SolvedEqSystem& sys, const std::vector<LinTerm>& s,
                      const std::vector<LinTerm>& t) {
  if (s.size() != t.size()) return false;
  for (size_t i = 0; i < s.size(); ++i)
    if (!sys.entails_zero(s[i] - t[i])) return false;
  return true;
}

namespace {

std::optional<std::string> pick_pivot(const LinTerm& t) {
  if (t.coeffs().empty()) return std::nullopt;
  return t.coeffs().begin()->first;  // lexicographically least symbol
}

// gcd of variable coefficients fails to divide the constant -> no integer root
bool gcd_unsat(const LinTerm& t) {
  Int g = t.var_content();
  if (g == 0) return false;
  return t.const_part() % g != 0;
}

// Smith-based integral solvability of the echelon system; returns the row
// combination certificate when unsolvable.
std::optional<EqContradiction> lattice_unsat(const std::vector<SolvedRow>& rows) {
  if (rows.empty()) return std::nullopt;
  std::set<std::string, SymLess> syms;
  for (const auto& r : rows) r.lit().collect_symbols(syms);
  std::vector<std::string> vars(syms.begin(), syms.end());
  int k = int(rows.size()), n = int(vars.size());
  IntMatrix c(k, n);
  std::vector<Int> b(k);
  for (int i = 0; i < k; ++i) {
    LinTerm lit = rows[i].lit();
    for (int j = 0; j < n; ++j) c.at(i, j) = lit.coeff_of(vars[j]);
    b[i] = lit.const_part();
  }
  SmithFull sf = smith_decompose_full(c);
  int r = int(sf.t.diag.size());
  std::vector<Int> rhs(k, Int(0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) rhs[i] += sf.Linv.at(i, j) * (-b[j]);
  int bad = -1;
  for (int i = 0; i < r && bad < 0; ++i)
    if (rhs[i] % sf.t.diag[i] != 0) bad = i;
  if (bad < 0)
    for (int i = r; i < k && bad < 0; ++i)
      if (rhs[i] != 0) bad = i;
  if (bad < 0) return std::nullopt;
  EqContradiction contra;
  for (int j = 0; j < k; ++j) {
    const Int& w = sf.Linv.at(bad, j);
    if (w == 0) continue;
    contra.lit += rows[j].lit() * w;
    contra.apart += rows[j].apart * w;
  }
  contra.gcd_based = !contra.lit.coeffs().empty() || !contra.lit.fun_apps().empty();
  assert(gcd_unsat(contra.lit) || (contra.lit.is_const() && contra.lit.const_part() != 0));
  return contra;
}

}  // namespace

EqSolveResult solve_equalities(const std::vector<AnnLit>& eqs) {
  std::vector<SolvedRow> solved;
  for (const AnnLit& in : eqs) {
    assert(in.is_eq);
    LinTerm t = in.t;
    LinTerm a = in.apart;
    // eliminate existing pivots
    for (const auto& r : solved) {
      Int gamma = t.coeff_of(r.pivot);
      if (gamma == 0) continue;
      Int g = gcd(gamma, r.alpha);
      Int scale = r.alpha / g;
      Int rowmul = -(gamma / g);
      t = t * scale + r.lit() * rowmul;
      a = a * scale + r.apart * rowmul;
    }
    if (t.is_zero()) continue;
    if (t.is_const()) return EqContradiction{t, a, false};
    if (gcd_unsat(t)) return EqContradiction{t, a, true};
    auto pv = pick_pivot(t);
    assert(pv);
    if (t.coeff_of(*pv) < 0) {
      t = -t;
      a = -a;
    }
    SolvedRow row{*pv, t.coeff_of(*pv), t - LinTerm::sym(*pv, t.coeff_of(*pv)), a};
    // eliminate the new pivot from earlier rows
    for (auto& r : solved) {
      Int gamma = r.rest.coeff_of(row.pivot);
      if (gamma == 0) continue;
      Int g = gcd(gamma, row.alpha);
      Int scale = row.alpha / g;
      Int rowmul = -(gamma / g);
      LinTerm nl = r.lit() * scale + row.lit() * rowmul;
      r.apart = r.apart * scale + row.apart * rowmul;
      r.alpha = nl.coeff_of(r.pivot);
      r.rest = nl - LinTerm::sym(r.pivot, r.alpha);
      assert(r.alpha > 0);
    }
    solved.push_back(std::move(row));
  }
  if (auto contra = lattice_unsat(solved)) return *contra;
  SolvedEqSystem sys;
  sys.rows = std::move(solved);
  return sys;
}

AnnLit reduce_ineq(const SolvedEqSystem& sys, const AnnLit& ineq) {
  ReduceCert c = sys.reduce(ineq.t);
  AnnLit out = ineq;
  out.t = c.residue;
  out.apart = ineq.apart * c.mu + c.apart_delta;
  return out;
}

LinTerm canon_eq_term(const LinTerm& u) {
  if (u.is_zero()) return u;
  Int g = u.var_content();
  g = gcd(g, u.const_part());
  LinTerm v = u;
  if (g > 1) {
    LinTerm w;
    w.add_const(u.const_part() / g);
    for (const auto& [s, c] : u.coeffs()) w.add_sym(s, c / g);
    for (const auto& [a, c] : u.fun_apps()) w.add_app(a, c / g);
    v = w;
  }
  bool neg;
  if (!v.coeffs().empty()) {
    neg = v.coeffs().begin()->second < 0;
  } else if (!v.fun_apps().empty()) {
    neg = v.fun_apps().front().second < 0;
  } else {
    neg = v.const_part() < 0;
  }
  return neg ? -v : v;
}

LinTerm canon_leq_term(const LinTerm& u) {
  if (u.is_zero()) return u;
  Int g = u.var_content();
  g = gcd(g, u.const_part());
  if (g <= 1) return u;
  LinTerm w;
  w.add_const(u.const_part() / g);
  for (const auto& [s, c] : u.coeffs()) w.add_sym(s, c / g);
  for (const auto& [a, c] : u.fun_apps()) w.add_app(a, c / g);
  return w;
}

std::optional<FmContra> fm_inconsistency(const std::vector<AnnLit>& ineqs, size_t row_cap) {
  struct Row {
    LinTerm t, apart;
  };
  std::vector<Row> work;
  std::vector<std::string> order;
  for (const auto& l : ineqs) work.push_back({l.t, l.apart});

  auto scan_consts = [&](std::vector<Row>& rows) -> std::optional<FmContra> {
    std::vector<Row> keep;
    for (auto& r : rows) {
      if (r.t.is_const()) {
        if (r.t.const_part() > 0) return FmContra{r.apart, order};
        continue;  // trivially true, dropped
      }
      keep.push_back(std::move(r));
    }
    rows = std::move(keep);
    return std::nullopt;
  };

  for (;;) {
    if (auto hit = scan_consts(work)) return hit;
    if (work.empty()) return std::nullopt;
    // symbol with fewest occurrences, ties by symbol order
    std::map<std::string, int, SymLess> occ;
    for (const auto& r : work)
      for (const auto& [s, c] : r.t.coeffs()) occ[s]++;
    if (occ.empty()) return std::nullopt;  // app-monomial rows only: give up
    std::string best = occ.begin()->first;
    for (const auto& [s, n] : occ)
      if (n < occ[best]) best = s;
    order.push_back(best);

    std::vector<Row> pos, neg, rest;
    for (auto& r : work) {
      Int c = r.t.coeff_of(best);
      if (c > 0)
        pos.push_back(std::move(r));
      else if (c < 0)
        neg.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    if (!pos.empty() && !neg.empty()) {
      for (const auto& p : pos)
        for (const auto& q : neg) {
          Int a = p.t.coeff_of(best);
          Int b = -q.t.coeff_of(best);
          Int g = gcd(a, b);
          Row combo{p.t * (b / g) + q.t * (a / g), p.apart * (b / g) + q.apart * (a / g)};
          rest.push_back(std::move(combo));
          if (rest.size() > row_cap) return std::nullopt;  // blowup guard
        }
    }
    work = std::move(rest);
  }
}

StrengthenPremises strengthen_step(const AnnLit& ineq) {
  assert(!ineq.is_eq);
  StrengthenPremises p;
  p.eq_case = ineq;
  p.eq_case.is_eq = true;
  p.ineq_charge_a = ineq;
  p.ineq_charge_a.t += LinTerm(Int(1));
  p.ineq_charge_a.apart += LinTerm(Int(1));
  p.ineq_charge_a.times_strengthened++;
  p.ineq_charge_b = ineq;
  p.ineq_charge_b.t += LinTerm(Int(1));
  p.ineq_charge_b.times_strengthened++;
  return p;
}

}  // namespace itp
