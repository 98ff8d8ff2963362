#ifndef ITP_FORMULA_HPP
#define ITP_FORMULA_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itp/term.hpp"

namespace itp {

enum class Label { L, R };
inline Label other(Label l) { return l == Label::L ? Label::R : Label::L; }
inline const char* label_name(Label l) { return l == Label::L ? "L" : "R"; }

enum class FKind { EqZero, LeqZero, Divides, Pred, Not, And, Or, Forall, Exists };

class Formula;

struct FNode {
  FKind kind;
  LinTerm term;                // EqZero / LeqZero / Divides
  Int modulus;                 // Divides, >= 1
  std::string pred;            // Pred name
  bool graph = false;          // Pred: relational graph atom of a function
  std::vector<LinTerm> args;   // Pred arguments
  std::string var;             // Forall / Exists bound variable
  std::vector<Formula> kids;   // Not: 1; And/Or: 2; Forall/Exists: 1 (body)
};

// Immutable formula with shared substructure.
class Formula {
 public:
  Formula() = default;

  FKind kind() const { return n_->kind; }
  const LinTerm& term() const { return n_->term; }
  const Int& modulus() const { return n_->modulus; }
  const std::string& pred() const { return n_->pred; }
  bool graph() const { return n_->graph; }
  const std::vector<LinTerm>& args() const { return n_->args; }
  const std::string& var() const { return n_->var; }
  const Formula& kid(size_t i) const { return n_->kids[i]; }
  const std::vector<Formula>& kids() const { return n_->kids; }
  const Formula& body() const { return n_->kids[0]; }
  bool valid() const { return n_ != nullptr; }

  bool is_true() const;
  bool is_false() const;
  bool is_atom() const;       // EqZero | LeqZero | Divides | Pred
  bool is_literal() const;    // atom or negated atom

  bool operator==(const Formula& o) const;
  bool operator<(const Formula& o) const;

  static Formula make(FNode n);

 private:
  std::shared_ptr<const FNode> n_;
};

// Constructors (connectives fold boolean constants).
Formula f_true();
Formula f_false();
Formula eq0(LinTerm t);
Formula leq0(LinTerm t);
Formula divides(Int modulus, LinTerm t);  // modulus normalized to >= 1; 0 rejected
Formula pred_app(std::string name, std::vector<LinTerm> args, bool graph = false);
Formula f_not(Formula a);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula mk_and(const std::vector<Formula>& fs);  // right fold, true for empty
Formula mk_or(const std::vector<Formula>& fs);   // right fold, false for empty
Formula forall(std::string var, Formula body);
Formula exists(std::string var, Formula body);

struct SymbolSet {
  std::set<std::string, SymLess> consts;
  std::set<std::string> preds;  // uninterpreted predicates (graph atoms report the function)
  std::set<std::string> funs;
};

SymbolSet free_symbols(const Formula& f);
void collect_free_consts(const Formula& f, std::set<std::string, SymLess>& out);
bool contains_sym(const Formula& f, const std::string& s);
bool has_quantifier(const Formula& f);
bool has_div_terms(const Formula& f);
bool has_fun_apps(const Formula& f);

// Every free occurrence of variable/constant x replaced by t. Bound
// occurrences shadow; bound variables are globally fresh so capture
// cannot occur for engine-built terms.
Formula substitute(const Formula& f, const std::string& x, const LinTerm& t);

// Negation normal form: negations pushed to atoms, quantifiers dualized.
Formula nnf(const Formula& f);
Formula negate_nnf(const Formula& f);  // nnf of the negation

// Guarded-quantifier recognizers, Eq. (2) shape.
//   forall x. (alpha*x + t != 0 \/ phi)   /   exists x. (alpha*x + t == 0 /\ phi)
// alpha != 0 and x does not occur in t. phi may be absent (false / true).
struct Guarded {
  std::string var;
  Int alpha;      // nonzero
  LinTerm t;      // x-free remainder of the guard
  Formula rest;   // phi
};
std::optional<Guarded> match_guarded_forall(const Formula& f);
std::optional<Guarded> match_guarded_exists(const Formula& f);

// Relational binding recognizer, form (3): exists x. (f_p(t...,x) /\ phi)
// with x the final argument of the graph atom and x not in t.
struct RelBound {
  std::string var;
  Formula graph_atom;
  Formula rest;
};
std::optional<RelBound> match_rel_exists(const Formula& f);

std::vector<Formula> flatten(const Formula& f, FKind k);  // And/Or spine

}  // namespace itp

#endif
