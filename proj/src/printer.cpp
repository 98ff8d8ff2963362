#include "itp/printer.hpp"

#include <functional>
#include <sstream>

#include "itp/parser.hpp"

namespace itp {

namespace {

void mono_sexp(std::ostream& os, const std::string& atom, const Int& c, bool negated) {
  Int k = negated ? Int(-c) : c;
  if (k == 1) {
    os << atom;
  } else if (k == -1) {
    os << "(- " << atom << ")";
  } else {
    os << "(* " << k << " " << atom << ")";
  }
}

std::string app_sexp(const FunApp& a);

std::string atom_sexp(const FunApp& a) { return app_sexp(a); }

void term_parts(std::ostream& os, const LinTerm& t) {
  size_t n = t.coeffs().size() + t.fun_apps().size() + (t.const_part() != 0 ? 1 : 0);
  if (n == 0) {
    os << "0";
    return;
  }
  if (n > 1) os << "(+ ";
  bool first = true;
  for (const auto& [s, c] : t.coeffs()) {
    if (!first) os << " ";
    first = false;
    mono_sexp(os, s, c, false);
  }
  for (const auto& [a, c] : t.fun_apps()) {
    if (!first) os << " ";
    first = false;
    mono_sexp(os, atom_sexp(a), c, false);
  }
  if (t.const_part() != 0) {
    if (!first) os << " ";
    os << t.const_part();
  }
  if (n > 1) os << ")";
}

std::string app_sexp(const FunApp& a) {
  std::ostringstream os;
  if (a.is_div()) {
    os << "(div ";
    term_parts(os, a.args[0]);
    os << " " << a.den << ")";
    return os.str();
  }
  os << "(" << a.fun;
  for (const auto& arg : a.args) {
    os << " ";
    term_parts(os, arg);
  }
  os << ")";
  return os.str();
}

// Split t into positive and negative halves for readable (= lhs rhs).
void split_term(const LinTerm& t, LinTerm& pos, LinTerm& neg) {
  if (t.const_part() > 0)
    pos.add_const(t.const_part());
  else
    neg.add_const(-t.const_part());
  for (const auto& [s, c] : t.coeffs()) {
    if (c > 0)
      pos.add_sym(s, c);
    else
      neg.add_sym(s, -c);
  }
  for (const auto& [a, c] : t.fun_apps()) {
    if (c > 0)
      pos.add_app(a, c);
    else
      neg.add_app(a, -c);
  }
}

std::string rel_sexp(const char* op, const LinTerm& t) {
  LinTerm pos, neg;
  split_term(t, pos, neg);
  std::ostringstream os;
  os << "(" << op << " ";
  term_parts(os, pos);
  os << " ";
  term_parts(os, neg);
  os << ")";
  return os.str();
}

// any occurrence, free or bound
bool mentions_name(const Formula& f, const std::string& name) {
  switch (f.kind()) {
    case FKind::Forall:
    case FKind::Exists:
      if (f.var() == name) return true;
      return mentions_name(f.body(), name);
    case FKind::Not:
    case FKind::And:
    case FKind::Or:
      for (const auto& k : f.kids())
        if (mentions_name(k, name)) return true;
      return false;
    default:
      return contains_sym(f, name);
  }
}

// generated bound variables get printable names before output
std::string printable_var(const Formula& scope, const std::string& var) {
  if (!is_generated_sym(var)) return var;
  static const char* firsts[] = {"x", "y", "z"};
  for (const char* c : firsts)
    if (!mentions_name(scope, c)) return c;
  for (int i = 1;; ++i) {
    std::string cand = "x" + std::to_string(i);
    if (!mentions_name(scope, cand)) return cand;
  }
}

Sort infer_var_sort(const std::string& var, const Formula& body) {
  // array-sorted when used in an array position of a graph atom
  std::function<bool(const Formula&)> scan = [&](const Formula& f) -> bool {
    switch (f.kind()) {
      case FKind::Pred:
        if (f.graph() && (f.pred() == "select" || f.pred() == "store")) {
          if (f.args()[0].coeff_of(var) != 0) return true;
          if (f.pred() == "store" && f.args()[3].coeff_of(var) != 0) return true;
        }
        return false;
      case FKind::Not:
      case FKind::And:
      case FKind::Or:
        for (const auto& k : f.kids())
          if (scan(k)) return true;
        return false;
      case FKind::Forall:
      case FKind::Exists:
        if (f.var() == var) return false;
        return scan(f.body());
      default:
        return false;
    }
  };
  return scan(body) ? Sort::ArrayS : Sort::IntS;
}

}  // namespace

std::string print_term(const LinTerm& t) {
  std::ostringstream os;
  term_parts(os, t);
  return os.str();
}

std::string print_formula(const Formula& f) {
  switch (f.kind()) {
    case FKind::EqZero:
      if (f.is_true()) return "true";
      if (f.is_false()) return "false";
      return rel_sexp("=", f.term());
    case FKind::LeqZero:
      return rel_sexp("<=", f.term());
    case FKind::Divides: {
      std::ostringstream os;
      os << "(divides " << f.modulus() << " " << print_term(f.term()) << ")";
      return os.str();
    }
    case FKind::Pred: {
      std::ostringstream os;
      os << "(" << f.pred() << (f.graph() ? "_p" : "");
      for (const auto& a : f.args()) os << " " << print_term(a);
      os << ")";
      return os.str();
    }
    case FKind::Not:
      return "(not " + print_formula(f.kid(0)) + ")";
    case FKind::And:
    case FKind::Or: {
      const char* op = f.kind() == FKind::And ? "and" : "or";
      std::ostringstream os;
      os << "(" << op << " " << print_formula(f.kid(0));
      Formula g = f.kid(1);
      while (g.kind() == f.kind()) {  // right spine
        os << " " << print_formula(g.kid(0));
        g = g.kid(1);
      }
      os << " " << print_formula(g) << ")";
      return os.str();
    }
    case FKind::Forall:
    case FKind::Exists: {
      const char* op = f.kind() == FKind::Forall ? "forall" : "exists";
      std::ostringstream os;
      os << "(" << op << " (";
      Formula g = f;
      bool first = true;
      while (g.kind() == f.kind()) {
        Sort s = infer_var_sort(g.var(), g.body());
        std::string name = printable_var(g, g.var());
        Formula body = g.body();
        if (name != g.var()) body = substitute(body, g.var(), LinTerm(name));
        os << (first ? "" : " ") << "(" << name << " "
           << (s == Sort::ArrayS ? "(Array Int Int)" : "Int") << ")";
        first = false;
        g = body;
      }
      os << ") " << print_formula(g) << ")";
      return os.str();
    }
  }
  return "?";
}

std::string print_sequent(const Sequent& s) {
  std::ostringstream os;
  os << "(sequent (ant";
  for (const auto& lf : s.ant) {
    os << " (" << label_name(lf.lab);
    if (lf.axiom >= 0) os << " axiom " << axiom_name(AxiomKind(lf.axiom));
    os << " " << print_formula(lf.f) << ")";
  }
  for (const auto& a : s.ant_atoms)
    os << " (" << label_name(a.lab) << " " << print_formula(a.to_formula()) << ")";
  for (const auto& l : s.eqs)
    os << " (lit " << print_formula(eq0(l.t)) << " (apart " << print_term(l.apart) << "))";
  for (const auto& l : s.ineqs)
    os << " (lit " << print_formula(leq0(l.t)) << " (apart " << print_term(l.apart) << "))";
  os << ") (suc";
  for (const auto& lf : s.suc)
    os << " (" << label_name(lf.lab) << " " << print_formula(lf.f) << ")";
  for (const auto& a : s.suc_atoms)
    os << " (" << label_name(a.lab) << " " << print_formula(a.to_formula()) << ")";
  if (s.target)
    os << " (target " << print_formula(eq0(s.target->s)) << " (apart "
       << print_term(s.target->apart) << (s.target->final_neq ? " neq" : " eq") << "))";
  os << ") (itp "
     << (s.interpolant_slot ? print_formula(*s.interpolant_slot) : std::string("?")) << "))";
  return os.str();
}

std::string print_problem(const Problem& p) {
  std::ostringstream os;
  for (const auto& [name, sort] : p.sig.consts)
    os << "(declare-const " << name << " "
       << (sort == Sort::ArrayS ? "(Array Int Int)" : "Int") << ")\n";
  for (const auto& [name, d] : p.sig.preds) {
    os << "(declare-pred " << name << " (";
    for (size_t i = 0; i < d.args.size(); ++i) os << (i ? " " : "") << "Int";
    os << "))\n";
  }
  for (const auto& [name, d] : p.sig.funs) {
    if (name == "select" || name == "store") continue;  // builtin with arrays
    os << "(declare-fun " << name << " (";
    for (size_t i = 0; i < d.args.size(); ++i) os << (i ? " " : "") << "Int";
    os << ") Int)\n";
  }
  for (const auto& [k, v] : p.options) os << "(set-option :" << k << " " << v << ")\n";
  os << "(assert-A " << print_formula(p.part_A) << ")\n";
  os << "(assert-B " << print_formula(p.part_B) << ")\n";
  return os.str();
}

}  // namespace itp
