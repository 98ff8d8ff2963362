#ifndef ITP_GUARDS_HPP
#define ITP_GUARDS_HPP

#include "itp/formula.hpp"
#include "itp/signature.hpp"

namespace itp {

enum class Frag { QF_PA, PAID, PAID_UP, PAID_UFP, PAID_UF, GENERAL };
const char* frag_name(Frag f);

// Smith-decomposition normalization of multi-guard quantifier blocks into
// chains of single-guard quantifiers (plus residual literals outside the
// chain). Blocks that leave a quantified variable unguarded are returned
// unchanged.
Formula normalize_guards(const Formula& f, SymbolGen& gen);

// Guarded quantifiers eliminated through integer division:
//   forall x.(ax+t != 0 \/ phi)  ->  (a does-not-divide t) \/ phi[x := -t div a]
// With rewrite_divides, divisibility atoms become a*(t div a) = t.
Formula to_div_form(const Formula& f, bool rewrite_divides = false);

// Division terms eliminated through guarded existentials:
//   phi[t div a]  ->  OR_{r=0}^{a-1} exists q.(a q - t + r = 0 /\ phi[q])
Formula from_div_form(const Formula& f);

struct ZeroDivisor : std::runtime_error {
  ZeroDivisor() : std::runtime_error("ZeroDivisor") {}
};

// Purely syntactic fragment classification; GENERAL iff some quantifier
// matches neither the guarded shape nor the relational-binding shape.
Frag classify_fragment(const Formula& f);

}  // namespace itp

#endif
