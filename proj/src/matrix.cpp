#include "itp/matrix.hpp"

#include <cassert>
#include <cstdlib>
#include <limits>

namespace itp {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  assert(cols_ == o.rows_);
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

void IntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::add_row(int dst, int src, const Int& k) {
  if (k == 0) return;
  for (int c = 0; c < cols_; ++c) at(dst, c) += k * at(src, c);
}

void IntMatrix::add_col(int dst, int src, const Int& k) {
  if (k == 0) return;
  for (int r = 0; r < rows_; ++r) at(r, dst) += k * at(r, src);
}

void IntMatrix::negate_row(int i) {
  for (int c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMatrix::negate_col(int j) {
  for (int r = 0; r < rows_; ++r) at(r, j) = -at(r, j);
}

Int det_bareiss(const IntMatrix& m) {
  assert(m.rows() == m.cols());
  int n = m.rows();
  if (n == 0) return Int(1);
  IntMatrix a = m;
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return Int(0);
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        Int q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        a.at(i, j) = q;
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

namespace {

// Accumulators for P*C*Q = D. L = Pinv, R = Qinv at the end.
struct Acc {
  IntMatrix d, p, pinv, q, qinv;

  void row_swap(int i, int j) {
    d.swap_rows(i, j);
    p.swap_rows(i, j);
    pinv.swap_cols(i, j);
  }
  void col_swap(int i, int j) {
    d.swap_cols(i, j);
    q.swap_cols(i, j);
    qinv.swap_rows(i, j);
  }
  void row_add(int dst, int src, const Int& k) {
    d.add_row(dst, src, k);
    p.add_row(dst, src, k);
    pinv.add_col(src, dst, -k);
  }
  void col_add(int dst, int src, const Int& k) {
    d.add_col(dst, src, k);
    q.add_col(dst, src, k);
    qinv.add_row(src, dst, -k);
  }
  void row_neg(int i) {
    d.negate_row(i);
    p.negate_row(i);
    pinv.negate_col(i);
  }
};

bool is_lone(const IntMatrix& d, int s) {
  for (int i = s + 1; i < d.rows(); ++i)
    if (d.at(i, s) != 0) return false;
  for (int j = s + 1; j < d.cols(); ++j)
    if (d.at(s, j) != 0) return false;
  return true;
}

bool find_min_entry(const IntMatrix& d, int s, int& ir, int& ic) {
  bool found = false;
  Int best;
  for (int i = s; i < d.rows(); ++i)
    for (int j = s; j < d.cols(); ++j) {
      if (d.at(i, j) == 0) continue;
      Int v = abs(d.at(i, j));
      if (!found || v < best) {
        found = true;
        best = v;
        ir = i;
        ic = j;
      }
    }
  return found;
}

bool all_divisible(const IntMatrix& d, int s, int& ir, int& ic) {
  for (int i = s + 1; i < d.rows(); ++i)
    for (int j = s + 1; j < d.cols(); ++j)
      if (d.at(i, j) % d.at(s, s) != 0) {
        ir = i;
        ic = j;
        return false;
      }
  return true;
}

}  // namespace

SmithFull smith_decompose_full(const IntMatrix& c) {
  int m = c.rows(), n = c.cols();
  Acc a;
  a.d = c;
  a.p = IntMatrix::identity(m);
  a.pinv = IntMatrix::identity(m);
  a.q = IntMatrix::identity(n);
  a.qinv = IntMatrix::identity(n);

  int nmin = std::min(m, n);
  for (int s = 0; s < nmin; ++s) {
    int ir = s, ic = s;
    if (!find_min_entry(a.d, s, ir, ic)) break;  // remaining submatrix is zero
    a.row_swap(s, ir);
    a.col_swap(s, ic);

    for (;;) {
      bool reduced = false;
      for (int i = s + 1; i < m; ++i) {
        if (a.d.at(i, s) == 0) continue;
        Int qt = a.d.at(i, s) / a.d.at(s, s);  // truncated
        a.row_add(i, s, -qt);
        if (a.d.at(i, s) != 0) {
          // remainder smaller in magnitude than pivot: promote it
          a.row_swap(s, i);
          reduced = true;
        }
      }
      for (int j = s + 1; j < n; ++j) {
        if (a.d.at(s, j) == 0) continue;
        Int qt = a.d.at(s, j) / a.d.at(s, s);
        a.col_add(j, s, -qt);
        if (a.d.at(s, j) != 0) {
          a.col_swap(s, j);
          reduced = true;
        }
      }
      if (reduced) continue;
      if (!is_lone(a.d, s)) continue;
      int jr, jc;
      if (!all_divisible(a.d, s, jr, jc)) {
        a.row_add(s, jr, Int(1));
        continue;
      }
      break;
    }
    if (a.d.at(s, s) < 0) a.row_neg(s);
  }

  SmithFull out;
  out.t.S = a.d;
  out.t.L = a.pinv;
  out.t.R = a.qinv;
  for (int i = 0; i < nmin; ++i) {
    if (a.d.at(i, i) == 0) break;
    out.t.diag.push_back(a.d.at(i, i));
  }
  out.Linv = a.p;
  out.Rinv = a.q;
  return out;
}

SmithTriple smith_decompose(const IntMatrix& c) { return smith_decompose_full(c).t; }

}  // namespace itp
