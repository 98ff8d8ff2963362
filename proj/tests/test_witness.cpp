#include "doctest.h"
#include "itp/witness.hpp"

#include <random>

using namespace itp;

TEST_CASE("lemma-14 witness on the pinned instances") {
  // S = {y + 1}: a = 4, image 5, half 2
  Int a = lemma14_witness({{Int(1), Int(1)}});
  CHECK(a == 4);
  CHECK(a % 2 == 0);

  // S empty: a = 2
  CHECK(lemma14_witness({}) == 2);

  // S = {2y, -y+3}: smallest even a > 6 is 8; 4 not in {16, -5}
  Int a3 = lemma14_witness({{Int(2), Int(0)}, {Int(-1), Int(3)}});
  CHECK(a3 == 8);
}

TEST_CASE("lemma-14 witness validates on random instances") {
  std::mt19937 rng(53);
  auto rint = [&](int lo, int hi) { return int(rng() % (hi - lo + 1)) + lo; };
  for (int round = 0; round < 100; ++round) {
    std::vector<L14Term> terms;
    int n = rint(0, 5);
    for (int i = 0; i < n; ++i) terms.push_back({Int(rint(-9, 9)), Int(rint(-9, 9))});
    Int a = lemma14_witness(terms);
    CHECK(a % 2 == 0);
    Int half = a / 2;
    for (const auto& t : terms) CHECK(t.a * a + t.b != half);
  }
}

TEST_CASE("projection witness: base case floors directly") {
  // no disequalities: z = floor(y), h = 0
  ProjectionInstance inst;
  inst.ts = {{Int(0), Int(1)}};  // v1 <= 0
  std::vector<Rat> y = {Rat(-7, 2)};
  ProjectionWitness w = integer_projection_witness(inst, y);
  REQUIRE(w.z.size() == 1);
  CHECK(w.z[0] == -4);
  CHECK(w.h[0] == 0);
}

TEST_CASE("projection witness: single disequality bumps as in the construction") {
  // t1 = v1 <= 0, s1 = v1 != 0; r = -2, y = -2 -> z = -2
  ProjectionInstance inst;
  inst.ts = {{Int(0), Int(1)}};
  inst.ss = {{Int(0), Int(1)}};
  std::vector<Rat> y = {Rat(-2)};
  ProjectionWitness w = integer_projection_witness(inst, y);
  CHECK(w.z[0] == -2);
  CHECK(w.h[0] == 0);
}

TEST_CASE("projection witness: two stacked disequalities respect h <= p^2") {
  // t1 = v1, s1 = v1, s2 = v1 + 1
  ProjectionInstance inst;
  inst.ts = {{Int(0), Int(1)}};
  inst.ss = {{Int(0), Int(1)}, {Int(1), Int(1)}};
  // r = -(4+1)*1 = -5; take y = -5
  std::vector<Rat> y = {Rat(-5)};
  ProjectionWitness w = integer_projection_witness(inst, y);
  CHECK(inst.ts[0][1] * w.z[0] <= 0);
  CHECK(w.z[0] != 0);
  CHECK(w.z[0] != -1);
  CHECK(w.h[0] <= 4);
}

TEST_CASE("projection witness: hypothesis violations are reported") {
  ProjectionInstance inst;
  inst.ts = {{Int(0), Int(1)}};
  inst.ss = {{Int(0), Int(1)}};
  std::vector<Rat> y = {Rat(5)};  // f(y) = 5 > r
  CHECK_THROWS_AS(integer_projection_witness(inst, y), HypothesisViolated);
}

TEST_CASE("projection witness on random instances; Property 17") {
  std::mt19937 rng(59);
  auto rint = [&](int lo, int hi) { return int(rng() % (hi - lo + 1)) + lo; };
  for (int round = 0; round < 100; ++round) {
    int n = rint(1, 3), m = rint(1, 3), p = rint(0, 3);
    // recession direction d with c^j . d < 0 for every row
    std::vector<Int> dir(n);
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      dir[i] = Int(rint(-2, 2));
      if (dir[i] != 0) nonzero = true;
    }
    if (!nonzero) dir[0] = 1;
    ProjectionInstance inst;
    for (int j = 0; j < m; ++j) {
      std::vector<Int> row(n + 1);
      row[0] = Int(rint(-4, 4));
      Int dot(0);
      for (int i = 0; i < n; ++i) {
        row[i + 1] = Int(rint(-3, 3));
        dot += row[i + 1] * dir[i];
      }
      if (dot == 0) {
        // force a strict descent component
        int i0 = 0;
        while (dir[i0] == 0) i0++;
        row[i0 + 1] -= dir[i0] > 0 ? 1 : -1;
        dot -= dir[i0] > 0 ? dir[i0] : -dir[i0];
      }
      if (dot > 0)
        for (int i = 0; i <= n; ++i) row[i] = i == 0 ? row[i] : -row[i];
      inst.ts.push_back(row);
    }
    for (int k = 0; k < p; ++k) {
      std::vector<Int> row(n + 1);
      row[0] = Int(rint(-4, 4));
      bool nz = false;
      for (int i = 0; i < n; ++i) {
        row[i + 1] = Int(rint(-3, 3));
        if (row[i + 1] != 0) nz = true;
      }
      if (!nz) row[1] = 1;
      inst.ss.push_back(row);
    }

    // y = tau * dir with tau large enough that f(y) <= r
    Int pp(p);
    Rat r = Rat(-(pp * pp + 1) * inst.norm());
    Rat tau(1);
    for (const auto& row : inst.ts) {
      Int dot(0);
      for (int i = 0; i < n; ++i) dot += row[i + 1] * dir[i];
      // row[0] + tau * dot <= r  with dot <= -1: tau >= row[0] - r
      Rat need = (Rat(row[0]) - r) / Rat(-dot);
      if (need > tau) tau = need;
    }
    tau += 1;
    std::vector<Rat> y(n);
    for (int i = 0; i < n; ++i) y[i] = tau * Rat(dir[i]);

    ProjectionWitness w = integer_projection_witness(inst, y);
    for (const auto& row : inst.ts) {
      Int v = row[0];
      for (int i = 0; i < n; ++i) v += row[i + 1] * w.z[i];
      CHECK(v <= 0);
    }
    for (const auto& row : inst.ss) {
      Int v = row[0];
      for (int i = 0; i < n; ++i) v += row[i + 1] * w.z[i];
      CHECK(v != 0);
    }
    for (const auto& h : w.h) CHECK(h <= pp * pp);

    // Property 17: f(floor(y)) <= f(y) + ||C||
    Rat fy;
    bool first = true;
    for (const auto& row : inst.ts) {
      Rat v(row[0]);
      for (int i = 0; i < n; ++i) v += Rat(row[i + 1]) * y[i];
      if (first || v > fy) fy = v;
      first = false;
    }
    Int fz;
    first = true;
    for (const auto& row : inst.ts) {
      Int v = row[0];
      for (int i = 0; i < n; ++i) {
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), y[i].get_num().get_mpz_t(), y[i].get_den().get_mpz_t());
        v += row[i + 1] * fl;
      }
      if (first || v > fz) fz = v;
      first = false;
    }
    CHECK(Rat(fz) <= fy + Rat(inst.norm()));
  }
}
