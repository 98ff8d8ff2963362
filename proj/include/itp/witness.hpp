#ifndef ITP_WITNESS_HPP
#define ITP_WITNESS_HPP

#include <stdexcept>
#include <vector>

#include "itp/term.hpp"

namespace itp {

// Witness for: given terms a_i*y + b_i, there is an even a with
// a/2 outside the image set. Constructed as the smallest even a
// exceeding 2 * max |b_i| and verified by evaluation.
struct L14Term {
  Int a, b;  // a*y + b
};
Int lemma14_witness(const std::vector<L14Term>& terms);

// Instance of the integer projection lemma: inequality rows t^j(v) <= 0 and
// non-null disequality rows s^k(v) != 0 over variables v_1..v_n.
struct ProjectionInstance {
  std::vector<std::vector<Int>> ts;  // row j: [c_0, c_1..c_n]
  std::vector<std::vector<Int>> ss;  // row k: [d_0, d_1..d_n], some d_i != 0

  int n() const { return ts.empty() ? (ss.empty() ? 0 : int(ss[0].size()) - 1)
                                    : int(ts[0].size()) - 1; }
  Int norm() const;  // ||C|| = sum |c_i^j| over variable coefficients
};

struct HypothesisViolated : std::runtime_error {
  HypothesisViolated() : std::runtime_error("HypothesisViolated: f(y) > r") {}
};

struct ProjectionWitness {
  std::vector<Int> z;
  std::vector<Int> h;  // bump amounts, each <= p^2
};

// Constructive integer point with all t^j(z) <= 0 and s^k(z) != 0, built from
// a real point y with f(y) <= r = -(p^2+1)*||C|| by flooring and bumping.
ProjectionWitness integer_projection_witness(const ProjectionInstance& inst,
                                             const std::vector<Rat>& y);

}  // namespace itp

#endif
