#ifndef ITP_PROOF_HPP
#define ITP_PROOF_HPP

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <vector>

#include "itp/sequent.hpp"
#include "itp/signature.hpp"

namespace itp {

struct OpenProof : std::runtime_error {
  OpenProof() : std::runtime_error("OpenProof: proof has unclosed leaves") {}
};
struct SchemaMismatch : std::runtime_error {
  explicit SchemaMismatch(const std::string& w) : std::runtime_error("SchemaMismatch: " + w) {}
};

// How premise interpolants compose into the conclusion interpolant.
enum class Comb {
  Leaf,        // premiseless, rule carries the interpolant
  Id,          // single premise, unchanged
  OrFold,      // disjunction of premise interpolants
  AndFold,     // conjunction
  QuantUni,    // forall over quant_syms around the single premise
  QuantExi,    // exists over quant_syms
  Strengthen,  // premises [eq, charge_a, charge_b]: Ia \/ (Ieq /\ Ib)
};

struct RuleInfo {
  std::string name;
  Comb comb = Comb::Id;
  Formula leaf_itp;                     // Comb::Leaf
  std::vector<std::string> quant_syms;  // constants generalized by Quant*

  // re-validation payload
  Label d = Label::L, e = Label::L, flab = Label::L;
  long principal = -1;                  // id of the principal member/literal
  std::string fresh;                    // fresh constant introduced, if any
  std::vector<LinTerm> inst_terms;
  Int mu = 0;                           // discharge scaling
  std::vector<std::pair<int, Int>> lambdas;
  int axiom = -1;
  std::string axiom_sym;
  std::vector<long> trigger_ids;
};

struct ProofNode {
  long id = 0;
  Sequent concl;
  RuleInfo rule;
  std::vector<std::unique_ptr<ProofNode>> prem;

  bool closed() const {
    if (prem.empty()) return rule.comb == Comb::Leaf;
    for (const auto& p : prem)
      if (!p->closed()) return false;
    return true;
  }
};

// Fold the combinators bottom-up; fills interpolant_slot on every node and
// returns the root interpolant. Throws OpenProof on unclosed trees.
Formula extract_interpolant(ProofNode& root, SymbolGen& gen);

// One s-expression per node: (node <id> <rule> <conclusion> (premises ...)).
void write_trace(const ProofNode& root, std::ostream& os);

// Structural re-validation of a stored proof: combinator arities, leaf
// interpolants present, discharge certificates consistent, fresh constants
// absent from conclusions.
bool validate_proof(const ProofNode& root, std::string* why = nullptr);

}  // namespace itp

#endif
