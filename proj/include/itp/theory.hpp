#ifndef ITP_THEORY_HPP
#define ITP_THEORY_HPP

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "itp/arith.hpp"
#include "itp/sequent.hpp"
#include "itp/signature.hpp"

namespace itp {

struct QuantifiedFunctionArgs : std::runtime_error {
  explicit QuantifiedFunctionArgs(const std::string& what) : std::runtime_error(what) {}
};

// Relational encoding of function applications, Eq. (4): phi must be in
// negation normal form; innermost applications are encoded first, each with a
// fresh bound result variable. The result is function-free with graph atoms
// only in positive positions.
Formula rel_encode(const Formula& phi, SymbolGen& gen);

// Inverse direction: every exists x.(f_p(t...,x) /\ phi[x]) collapses to
// phi[f(t...)]. If relational atoms remain outside the binding pattern the
// input is returned unchanged and *collapsible is set to false.
Formula back_translate(const Formula& phi, bool* collapsible = nullptr);

// Consistency axioms as closed formulas (for sequent members and traces).
Formula pc_axiom(const std::string& pred, size_t arity, SymbolGen& gen);
Formula fc_axiom(const std::string& fun, size_t arity, SymbolGen& gen);
std::array<Formula, 3> array_axioms(SymbolGen& gen);

// One ground instantiation of a consistency/array axiom.
struct AxiomInst {
  AxiomKind kind;
  std::string sym;             // predicate or function (empty for AR axioms)
  Label d = Label::L, e = Label::L, flab = Label::L;
  std::vector<long> trigger_ids;
  std::vector<PredAtom> atoms;          // the trigger literals
  std::vector<LinTerm> inst_terms;      // full substitution range, in order
  std::map<std::string, LinTerm> subst; // recorded substitution (axiom var -> term)

  std::string key() const;
};

// Step-3 trigger selection. Cross-label pairs require the argument equalities
// to be entailed by the solved system; same-label pairs are instantiated
// eagerly. With restricted == false the entailment gate is dropped entirely.
std::vector<AxiomInst> select_instantiation_pairs(const Sequent& s,
                                                  const SolvedEqSystem& sys,
                                                  const Signature& sig,
                                                  bool restricted);

// Premise payload of one instantiation, Lemma 6/12 shape: atom premises close
// against the triggers, the equality premise is handed to the succedent for
// discharge, the conclusion premise continues the proof.
struct InstPremises {
  std::vector<Formula> suc_atom_premises;  // [atom]_F per trigger
  Formula eq_premise;                      // conjunction s-t = 0 (true if none)
  Formula continuation;                    // conclusion literal/formula, label F
  bool continuation_in_ant = true;
};

InstPremises instantiate_axiom(const AxiomInst& inst, SymbolGen& gen);

}  // namespace itp

#endif
