#ifndef ITP_CHECKER_HPP
#define ITP_CHECKER_HPP

#include <optional>
#include <vector>

#include "itp/eval.hpp"
#include "itp/prover.hpp"

namespace itp {

// Three-condition interpolant validation:
//   (i)  [A]_L, [not I]_R |- (empty) closes,
//   (ii) [I]_L, [B]_R |- (empty) closes,
//   (iii) constants and uninterpreted symbols of I occur in both A and B.
// Proof-based verification first; bounded search only ever refutes.
struct CheckReport {
  enum class Cond { Proved, Refuted, Unknown };
  Cond cond_left = Cond::Unknown;
  Cond cond_right = Cond::Unknown;
  std::optional<Model> refutation;
  bool vocab_pass = false;
  std::vector<std::string> vocab_offenders;
  enum class Verdict { Verified, Rejected, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  std::string detail;
};

CheckReport check_interpolant(const Formula& a, const Formula& b, const Formula& i,
                              const Signature& sig, const StrategyConfig& cfg);

}  // namespace itp

#endif
