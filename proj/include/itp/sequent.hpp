#ifndef ITP_SEQUENT_HPP
#define ITP_SEQUENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "itp/formula.hpp"

namespace itp {

enum class AxiomKind { PC = 0, FC = 1, AR1 = 2, AR2 = 3, AR3 = 4 };
inline const char* axiom_name(AxiomKind k) {
  switch (k) {
    case AxiomKind::PC: return "PC";
    case AxiomKind::FC: return "FC";
    case AxiomKind::AR1: return "AR1";
    case AxiomKind::AR2: return "AR2";
    case AxiomKind::AR3: return "AR3";
  }
  return "?";
}

struct LabelledFormula {
  Formula f;
  Label lab;
  int axiom = -1;          // static_cast<int>(AxiomKind) for theory-axiom members
  std::string axiom_sym;   // predicate/function the axiom is about (PC/FC)
  long id = 0;             // derivation age, monotone per proof
};

// Antecedent arithmetic literal t (=|<=) 0 annotated with its partial
// interpolant (the A-contribution t^A).
struct AnnLit {
  LinTerm t;
  bool is_eq = true;
  LinTerm apart;
  long id = 0;
  int times_strengthened = 0;
};

// Succedent equality being discharged: s = 0 [u (!=|=) 0].
struct SucAnn {
  LinTerm s;
  LinTerm apart;
  bool final_neq = true;  // true: closes as (u != 0); false: closes as (u == 0)
};

struct PredAtom {
  std::string pred;
  bool graph = false;
  std::vector<LinTerm> args;
  Label lab = Label::L;
  long id = 0;

  Formula to_formula() const { return pred_app(pred, args, graph); }
};

struct Sequent {
  std::vector<LabelledFormula> ant;  // unprocessed / pending formulas
  std::vector<LabelledFormula> suc;
  std::vector<AnnLit> eqs;           // annotated antecedent equalities
  std::vector<AnnLit> ineqs;         // annotated antecedent inequalities
  std::vector<PredAtom> ant_atoms;
  std::vector<PredAtom> suc_atoms;
  std::optional<SucAnn> target;      // transient during a discharge chain
  std::optional<Formula> interpolant_slot;

  // Vocabulary of the L-part (L-labelled members, L-atoms, partial
  // interpolants) and of the R-part (R-labelled members, R-atoms, t - t^A).
  std::set<std::string, SymLess> vocab(Label side) const;
};

}  // namespace itp

#endif
