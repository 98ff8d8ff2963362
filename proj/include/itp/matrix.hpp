#ifndef ITP_MATRIX_HPP
#define ITP_MATRIX_HPP

#include <vector>

#include "itp/term.hpp"

namespace itp {

// Dense arbitrary-precision integer matrix.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Int(0)) {}

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  IntMatrix mul(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void add_row(int dst, int src, const Int& k);  // row[dst] += k * row[src]
  void add_col(int dst, int src, const Int& k);
  void negate_row(int i);
  void negate_col(int j);

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

// Fraction-free Bareiss determinant (square matrices).
Int det_bareiss(const IntMatrix& m);

// Smith decomposition C = L * S * R with L, R unimodular and S diagonal with
// positive diagonal entries beta_1 | beta_2 | ... | beta_r.
struct SmithTriple {
  IntMatrix L, S, R;
  std::vector<Int> diag;  // beta_1..beta_r
};

// Extended result carrying the inverses accumulated during reduction.
struct SmithFull {
  SmithTriple t;
  IntMatrix Linv, Rinv;  // Linv * C * Rinv^{-1}... precisely: Linv*C = S*Rinv, see smith_decompose_full
};

SmithTriple smith_decompose(const IntMatrix& c);
SmithFull smith_decompose_full(const IntMatrix& c);

}  // namespace itp

#endif
