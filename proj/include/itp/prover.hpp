#ifndef ITP_PROVER_HPP
#define ITP_PROVER_HPP

#include <memory>
#include <optional>
#include <string>

#include "itp/arith.hpp"
#include "itp/eval.hpp"
#include "itp/proof.hpp"
#include "itp/sequent.hpp"
#include "itp/signature.hpp"

namespace itp {

struct StrategyConfig {
  bool restricted = true;
  enum class FcOrder { Derivation, Reverse };
  FcOrder fc_order = FcOrder::Derivation;
  long budget_nodes = 100000;
  int max_depth = 2000;
  Int model_bound = Int(6);
  long model_budget = 400000;
  long timeout_ms = 0;  // 0: none
};

struct ProveStats {
  long nodes = 0;
  int max_strengthen = 0;
};

struct ProveResult {
  enum class Status { Closed, Satisfiable, Unknown };
  Status status = Status::Unknown;
  std::unique_ptr<ProofNode> proof;  // Closed
  Model witness;                     // Satisfiable
  std::string reason;                // Unknown
  ProveStats stats;
};

// [A]_L, [B]_R |- (empty), with relational encoding of function occurrences
// and the consistency/array axiom members per occurrence side.
Sequent init_sequent(const Formula& a, const Formula& b, Signature& sig, SymbolGen& gen);

// Proof search: structural saturation, equality solving, entailment-gated
// axiom instantiation, fair STRENGTHEN with Fourier-Motzkin closure.
// sat_probe, when given, is the original conjunction used to detect
// satisfiable inputs by bounded model search (exact-evaluation models only).
ProveResult prove(const Sequent& root, const Signature& sig, const StrategyConfig& cfg,
                  SymbolGen& gen, const std::optional<Formula>& sat_probe = std::nullopt);

// Single-rule application on plain formula members (also the unit-test
// surface for the rule schemas). Positions index ant/suc vectors.
struct RuleApplication {
  std::vector<Sequent> premises;
  Comb comb = Comb::Id;
  Formula leaf_itp;
  std::vector<std::string> quant_syms;
};

RuleApplication apply_prop_rule(const std::string& rule, const Sequent& s, size_t ant_idx,
                                size_t suc_idx);
RuleApplication apply_quant_rule(const std::string& rule, const Sequent& s, bool in_ant,
                                 size_t idx, const std::optional<LinTerm>& inst,
                                 SymbolGen& gen);

struct NonGuarded : std::runtime_error {
  explicit NonGuarded(const std::string& w) : std::runtime_error("NonGuarded: " + w) {}
};

}  // namespace itp

#endif
