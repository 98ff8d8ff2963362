#include "itp/term.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace itp {

bool sym_less(const std::string& a, const std::string& b) {
  auto gen_rank = [](const std::string& s) -> int {
    if (s.empty()) return 0;
    if (s[0] == '$') return 1;
    if (s[0] == '?') return 2;
    return 0;
  };
  int ra = gen_rank(a), rb = gen_rank(b);
  if (ra != rb) return ra < rb;
  if (ra != 0) {
    // generated: compare counter numerically
    long ka = std::atol(a.c_str() + 1), kb = std::atol(b.c_str() + 1);
    if (ka != kb) return ka < kb;
  }
  return a < b;
}

FunApp::FunApp(std::string f, std::vector<LinTerm> a)
    : fun(std::move(f)), args(std::move(a)), den(0) {}

FunApp FunApp::div(LinTerm numerator, Int divisor) {
  if (divisor <= 0) throw std::invalid_argument("ZeroDivisor: div requires positive divisor");
  FunApp d;
  d.fun = "%div";
  d.args.push_back(std::move(numerator));
  d.den = std::move(divisor);
  return d;
}

bool FunApp::operator==(const FunApp& o) const {
  return fun == o.fun && den == o.den && args == o.args;
}

bool FunApp::operator<(const FunApp& o) const {
  if (fun != o.fun) return fun < o.fun;
  if (den != o.den) return den < o.den;
  return std::lexicographical_compare(args.begin(), args.end(), o.args.begin(),
                                      o.args.end(),
                                      [](const LinTerm& x, const LinTerm& y) { return x < y; });
}

LinTerm LinTerm::sym(const std::string& s, Int coeff) {
  LinTerm t;
  t.add_sym(s, coeff);
  return t;
}

Int LinTerm::coeff_of(const std::string& s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? Int(0) : it->second;
}

void LinTerm::add_sym(const std::string& s, const Int& coeff) {
  if (coeff == 0) return;
  auto it = coeffs_.find(s);
  if (it == coeffs_.end()) {
    coeffs_.emplace(s, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) coeffs_.erase(it);
  }
}

void LinTerm::add_app(const FunApp& a, const Int& coeff) {
  if (coeff == 0) return;
  auto it = std::lower_bound(apps_.begin(), apps_.end(), a,
                             [](const auto& p, const FunApp& x) { return p.first < x; });
  if (it != apps_.end() && it->first == a) {
    it->second += coeff;
    if (it->second == 0) apps_.erase(it);
  } else {
    apps_.insert(it, {a, coeff});
  }
}

LinTerm& LinTerm::operator+=(const LinTerm& o) {
  k_ += o.k_;
  for (const auto& [s, c] : o.coeffs_) add_sym(s, c);
  for (const auto& [a, c] : o.apps_) add_app(a, c);
  return *this;
}

LinTerm& LinTerm::operator-=(const LinTerm& o) {
  k_ -= o.k_;
  for (const auto& [s, c] : o.coeffs_) add_sym(s, -c);
  for (const auto& [a, c] : o.apps_) add_app(a, -c);
  return *this;
}

LinTerm LinTerm::operator+(const LinTerm& o) const {
  LinTerm r = *this;
  r += o;
  return r;
}

LinTerm LinTerm::operator-(const LinTerm& o) const {
  LinTerm r = *this;
  r -= o;
  return r;
}

LinTerm LinTerm::operator-() const { return *this * Int(-1); }

LinTerm LinTerm::operator*(const Int& k) const {
  LinTerm r;
  if (k == 0) return r;
  r.k_ = k_ * k;
  for (const auto& [s, c] : coeffs_) r.coeffs_.emplace(s, c * k);
  for (const auto& [a, c] : apps_) r.apps_.emplace_back(a, c * k);
  return r;
}

bool LinTerm::operator==(const LinTerm& o) const {
  return k_ == o.k_ && coeffs_ == o.coeffs_ && apps_ == o.apps_;
}

bool LinTerm::operator<(const LinTerm& o) const {
  if (k_ != o.k_) return k_ < o.k_;
  if (coeffs_ != o.coeffs_)
    return std::lexicographical_compare(
        coeffs_.begin(), coeffs_.end(), o.coeffs_.begin(), o.coeffs_.end(),
        [](const auto& x, const auto& y) {
          if (x.first != y.first) return sym_less(x.first, y.first);
          return x.second < y.second;
        });
  return std::lexicographical_compare(apps_.begin(), apps_.end(), o.apps_.begin(),
                                      o.apps_.end(), [](const auto& x, const auto& y) {
                                        if (!(x.first == y.first)) return x.first < y.first;
                                        return x.second < y.second;
                                      });
}

Int LinTerm::var_content() const {
  Int g(0);
  for (const auto& [s, c] : coeffs_) g = gcd(g, c);
  for (const auto& [a, c] : apps_) g = gcd(g, c);
  return g;
}

LinTerm LinTerm::subst(const std::string& s, const LinTerm& t) const {
  LinTerm r;
  r.k_ = k_;
  for (const auto& [v, c] : coeffs_) {
    if (v == s) {
      r += t * c;
    } else {
      r.add_sym(v, c);
    }
  }
  for (const auto& [a, c] : apps_) {
    FunApp na;
    na.fun = a.fun;
    na.den = a.den;
    na.args.reserve(a.args.size());
    for (const auto& arg : a.args) na.args.push_back(arg.subst(s, t));
    r.add_app(na, c);
  }
  return r;
}

void LinTerm::collect_symbols(std::set<std::string, SymLess>& out) const {
  for (const auto& [s, c] : coeffs_) out.insert(s);
  for (const auto& [a, c] : apps_)
    for (const auto& arg : a.args) arg.collect_symbols(out);
}

void LinTerm::collect_funs(std::set<std::string>& out) const {
  for (const auto& [a, c] : apps_) {
    if (!a.is_div()) out.insert(a.fun);
    for (const auto& arg : a.args) arg.collect_funs(out);
  }
}

bool LinTerm::contains_sym(const std::string& s) const {
  if (coeffs_.count(s)) return true;
  for (const auto& [a, c] : apps_)
    for (const auto& arg : a.args)
      if (arg.contains_sym(s)) return true;
  return false;
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  assert(b > 0);
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace itp
