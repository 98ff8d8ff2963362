#include "itp/witness.hpp"

#include <cassert>

namespace itp {

Int lemma14_witness(const std::vector<L14Term>& terms) {
  Int maxb(0);
  for (const auto& t : terms) {
    Int ab = abs(t.b);
    if (ab > maxb) maxb = ab;
  }
  Int a = 2 * maxb + 2;
  if (a % 2 != 0) a += 1;
  // a in 2Z, a > 2*max|b|; verify a/2 is not in the image
  Int half = a / 2;
  for (const auto& t : terms) assert(t.a * a + t.b != half);
  return a;
}

Int ProjectionInstance::norm() const {
  Int s(0);
  for (const auto& row : ts)
    for (size_t i = 1; i < row.size(); ++i) s += abs(row[i]);
  return s;
}

namespace {

Rat eval_row_rat(const std::vector<Int>& row, const std::vector<Rat>& x) {
  Rat v(row[0]);
  for (size_t i = 1; i < row.size(); ++i) v += Rat(row[i]) * x[i - 1];
  return v;
}

Int eval_row_int(const std::vector<Int>& row, const std::vector<Int>& x) {
  Int v = row[0];
  for (size_t i = 1; i < row.size(); ++i) v += row[i] * x[i - 1];
  return v;
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

}  // namespace

ProjectionWitness integer_projection_witness(const ProjectionInstance& inst,
                                             const std::vector<Rat>& y) {
  int n = inst.n();
  Int p(long(inst.ss.size()));
  Int r = -(p * p + 1) * inst.norm();

  // hypothesis: f(y) <= r
  for (const auto& row : inst.ts)
    if (eval_row_rat(row, y) > Rat(r)) throw HypothesisViolated();

  std::vector<Int> g(n);
  for (int i = 0; i < n; ++i) g[i] = floor_rat(y[i]);
  std::vector<Int> h(n, Int(0));

  // inductive bumping over the disequality rows
  for (size_t k = 0; k < inst.ss.size(); ++k) {
    std::vector<Int> z(n);
    for (int i = 0; i < n; ++i) z[i] = g[i] + h[i];
    if (eval_row_int(inst.ss[k], z) != 0) continue;
    int i0 = -1;
    for (int i = 0; i < n; ++i)
      if (inst.ss[k][i + 1] != 0) {
        i0 = i;
        break;
      }
    assert(i0 >= 0 && "disequality rows are non-null");
    // raise until rows 1..k all evaluate nonzero; at most k+1 raises
    for (;;) {
      h[i0] += 1;
      for (int i = 0; i < n; ++i) z[i] = g[i] + h[i];
      bool ok = true;
      for (size_t j = 0; j <= k; ++j)
        if (eval_row_int(inst.ss[j], z) == 0) ok = false;
      if (ok) break;
    }
  }

  ProjectionWitness w;
  w.h = h;
  w.z.resize(n);
  for (int i = 0; i < n; ++i) w.z[i] = g[i] + h[i];
  // conclusion check
  for (const auto& row : inst.ts) assert(eval_row_int(row, w.z) <= 0);
  for (const auto& row : inst.ss) assert(eval_row_int(row, w.z) != 0);
  for (const auto& hi : h) assert(hi <= p * p);
  return w;
}

}  // namespace itp
