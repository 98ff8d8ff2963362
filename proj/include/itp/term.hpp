#ifndef ITP_TERM_HPP
#define ITP_TERM_HPP

#include <gmpxx.h>

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace itp {

using Int = mpz_class;
using Rat = mpq_class;

// Total order on symbols: user-named symbols first (lexicographic), then
// generated symbols ("$k" constants, "?k" variables) by counter value.
bool sym_less(const std::string& a, const std::string& b);

struct SymLess {
  bool operator()(const std::string& a, const std::string& b) const {
    return sym_less(a, b);
  }
};

class LinTerm;

// Opaque monomial: an uninterpreted function application f(t1,...,tn), or an
// integer-division term (name "%div") with args = {numerator} and den >= 1.
struct FunApp {
  std::string fun;
  std::vector<LinTerm> args;
  Int den;  // 0 for ordinary applications, divisor >= 1 for "%div"

  FunApp() : den(0) {}
  FunApp(std::string f, std::vector<LinTerm> a);
  static FunApp div(LinTerm numerator, Int divisor);

  bool is_div() const { return fun == "%div"; }
  bool operator==(const FunApp& o) const;
  bool operator<(const FunApp& o) const;
};

// Canonical integer-linear combination: constant + sum of coeff*symbol +
// sum of coeff*funapp. No stored coefficient is zero; structural equality
// coincides with polynomial equality.
class LinTerm {
 public:
  LinTerm() : k_(0) {}
  explicit LinTerm(Int c) : k_(std::move(c)) {}
  explicit LinTerm(long c) : k_(c) {}
  explicit LinTerm(const std::string& sym) { coeffs_[sym] = 1; }
  explicit LinTerm(FunApp app) { apps_.emplace_back(std::move(app), Int(1)); }

  static LinTerm sym(const std::string& s, Int coeff = Int(1));

  const Int& const_part() const { return k_; }
  const std::map<std::string, Int, SymLess>& coeffs() const { return coeffs_; }
  const std::vector<std::pair<FunApp, Int>>& fun_apps() const { return apps_; }

  bool is_zero() const { return k_ == 0 && coeffs_.empty() && apps_.empty(); }
  bool is_const() const { return coeffs_.empty() && apps_.empty(); }
  bool has_apps() const { return !apps_.empty(); }

  Int coeff_of(const std::string& s) const;

  LinTerm& operator+=(const LinTerm& o);
  LinTerm& operator-=(const LinTerm& o);
  LinTerm operator+(const LinTerm& o) const;
  LinTerm operator-(const LinTerm& o) const;
  LinTerm operator-() const;
  LinTerm operator*(const Int& k) const;
  bool operator==(const LinTerm& o) const;
  bool operator<(const LinTerm& o) const;

  // gcd of all symbol/app coefficients (0 if none), ignoring the constant
  Int var_content() const;

  void add_sym(const std::string& s, const Int& coeff);
  void add_app(const FunApp& a, const Int& coeff);
  void add_const(const Int& c) { k_ += c; }

  // Every free occurrence of symbol s (also inside function-application
  // arguments) replaced by t.
  LinTerm subst(const std::string& s, const LinTerm& t) const;

  void collect_symbols(std::set<std::string, SymLess>& out) const;
  void collect_funs(std::set<std::string>& out) const;
  bool contains_sym(const std::string& s) const;

 private:
  Int k_;
  std::map<std::string, Int, SymLess> coeffs_;
  std::vector<std::pair<FunApp, Int>> apps_;  // sorted by FunApp
};

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
// floor division toward -infinity, divisor > 0
Int floor_div(const Int& a, const Int& b);

}  // namespace itp

#endif
