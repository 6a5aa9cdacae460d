#pragma once

#include "qk/series.hpp"

#include <vector>

namespace qk {

// Dense rectangular matrix over Q[h]/(h^(N+1)), uniform truncation order.
class SeriesMatrix {
public:
  SeriesMatrix() : rows_(0), cols_(0), order_(0) {}
  SeriesMatrix(int rows, int cols, int order)
      : rows_(rows), cols_(cols), order_(order),
        a_(static_cast<size_t>(rows) * cols, Series(order)) {}

  static SeriesMatrix identity(int n, int order) {
    SeriesMatrix m(n, n, order);
    for (int i = 0; i < n; ++i) m.at(i, i) = Series::one(order);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int trunc_order() const { return order_; }

  Series& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Series& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  SeriesMatrix operator*(const SeriesMatrix& o) const;
  bool operator==(const SeriesMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

private:
  int rows_, cols_, order_;
  std::vector<Series> a_;
};

struct SmithResult {
  // Exponents k of the nonzero invariant factors h^k, ascending (h^k1 | h^k2 | ...).
  std::vector<int> divisors;
  // left * input * right == diag(h^divisors, 0, ...), both transforms invertible.
  SeriesMatrix left, right;
  SeriesMatrix diag;
  // Inverses of the transforms, accumulated alongside.
  SeriesMatrix left_inv, right_inv;
};

// Diagonalization over the local ring Q[h]/(h^(N+1)): always defined, pivots
// chosen by minimal h-valuation so the divisor sequence comes out ascending.
SmithResult smith_normal_form(const SeriesMatrix& m);

// Solves A x = b for square A invertible over the truncated ring (unit
// determinant mod h); throws arith_error when no unit pivot is available.
std::vector<Series> solve_unit_system(SeriesMatrix a, std::vector<Series> b);

} // namespace qk
