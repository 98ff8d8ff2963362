#ifndef ITP_ARITH_HPP
#define ITP_ARITH_HPP

#include <optional>
#include <variant>
#include <vector>

#include "itp/sequent.hpp"

namespace itp {

// Row of the solved equality system: alpha * pivot + rest = 0, alpha >= 1,
// pivot does not occur in the rest of any row or in reduced inequalities.
struct SolvedRow {
  std::string pivot;
  Int alpha;
  LinTerm rest;    // residual s_j
  LinTerm apart;   // partial interpolant s_j^A
  LinTerm lit() const { return LinTerm::sym(pivot, alpha) + rest; }
};

struct EqContradiction {
  LinTerm lit;     // derived unsatisfiable equality
  LinTerm apart;
  bool gcd_based;  // true: var-coefficient gcd does not divide the constant
};

struct ReduceCert {
  LinTerm residue;
  Int mu;                 // positive scaling of the reduced term
  LinTerm apart_delta;    // sum lambda_i * apart_i accumulated alongside
  std::vector<std::pair<int, Int>> lambdas;  // row index -> multiplier
};

class SolvedEqSystem {
 public:
  std::vector<SolvedRow> rows;

  ReduceCert reduce(const LinTerm& u) const;
  bool entails_zero(const LinTerm& u) const { return reduce(u).residue.is_zero(); }
};

using EqSolveResult = std::variant<SolvedEqSystem, EqContradiction>;

// Step 2: integer-Gaussian elimination of the antecedent equalities with
// partial interpolants transformed alongside. Complete for unsatisfiability:
// an echelon pass catches per-row gcd conflicts, a Smith-decomposition
// solvability check catches cross-row lattice conflicts and yields the
// contradiction certificate as a row combination.
EqSolveResult solve_equalities(const std::vector<AnnLit>& eqs);

bool entails_equality(const SolvedEqSystem& sys, const std::vector<LinTerm>& s,
                      const std::vector<LinTerm>& t);

// Reduce an annotated inequality modulo the solved system (pivots eliminated).
AnnLit reduce_ineq(const SolvedEqSystem& sys, const AnnLit& ineq);

// Normalization of contribution literals: divide by the full content gcd and,
// for equalities/disequalities, make the leading coefficient positive.
LinTerm canon_eq_term(const LinTerm& u);
LinTerm canon_leq_term(const LinTerm& u);

struct FmContra {
  LinTerm apart;                // combined partial interpolant of the L-parts
  std::vector<std::string> elim_order;
};

// Step 4 closure: Fourier-Motzkin elimination with nonnegative multipliers
// over the reduced inequalities; nullopt when rationally consistent.
// row_cap bounds intermediate blowup (treated as "not inconsistent").
std::optional<FmContra> fm_inconsistency(const std::vector<AnnLit>& ineqs,
                                         size_t row_cap = 20000);

struct StrengthenPremises {
  AnnLit eq_case;       // t = 0 [a]        (re-enters equality solving)
  AnnLit ineq_charge_a; // t+1 <= 0 [a+1]
  AnnLit ineq_charge_b; // t+1 <= 0 [a]
};

StrengthenPremises strengthen_step(const AnnLit& ineq);

}  // namespace itp

#endif
