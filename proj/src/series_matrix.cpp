#include "qk/series_matrix.hpp"

namespace qk {

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& o) const {
  if (cols_ != o.rows_) throw arith_error("matrix shape mismatch");
  SeriesMatrix r(rows_, o.cols_, order_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Series& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Series& y = o.at(k, j);
        if (y.is_zero()) continue;
        r.at(i, j) += x * y;
      }
    }
  return r;
}

namespace {

void swap_rows(SeriesMatrix& m, int a, int b) {
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(SeriesMatrix& m, int a, int b) {
  for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row a += f * row b
void add_row(SeriesMatrix& m, int a, int b, const Series& f) {
  for (int j = 0; j < m.cols(); ++j) m.at(a, j) += f * m.at(b, j);
}
void add_col(SeriesMatrix& m, int a, int b, const Series& f) {
  for (int i = 0; i < m.rows(); ++i) m.at(i, a) += f * m.at(i, b);
}
void scale_row(SeriesMatrix& m, int a, const Series& f) {
  for (int j = 0; j < m.cols(); ++j) m.at(a, j) = f * m.at(a, j);
}

} // namespace

SmithResult smith_normal_form(const SeriesMatrix& m) {
  const int order = m.trunc_order();
  SmithResult res;
  res.diag = m;
  res.left = SeriesMatrix::identity(m.rows(), order);
  res.left_inv = res.left;
  res.right = SeriesMatrix::identity(m.cols(), order);
  res.right_inv = res.right;
  SeriesMatrix& d = res.diag;

  const int steps = std::min(m.rows(), m.cols());
  for (int t = 0; t < steps; ++t) {
    // pivot of minimal valuation in the trailing block
    int pi = -1, pj = -1, pv = order + 1;
    for (int i = t; i < d.rows(); ++i)
      for (int j = t; j < d.cols(); ++j) {
        int v = d.at(i, j).valuation();
        if (v < pv) pv = v, pi = i, pj = j;
      }
    if (pi < 0 || pv > order) break; // trailing block is zero

    if (pi != t) {
      swap_rows(d, t, pi);
      swap_rows(res.left, t, pi);
      swap_cols(res.left_inv, t, pi);
    }
    if (pj != t) {
      swap_cols(d, t, pj);
      swap_cols(res.right, t, pj);
      swap_rows(res.right_inv, t, pj);
    }
    // normalize pivot to exactly h^pv
    Series u = d.at(t, t).shifted(-pv); // unit
    Series uinv = u.inverse();
    scale_row(d, t, uinv);
    scale_row(res.left, t, uinv);
    // left_inv: column t scales by u
    for (int i = 0; i < res.left_inv.rows(); ++i)
      res.left_inv.at(i, t) = res.left_inv.at(i, t) * u;

    // eliminate column and row; quotients are exact (pivot has minimal valuation)
    for (int i = t + 1; i < d.rows(); ++i) {
      if (d.at(i, t).is_zero()) continue;
      Series f = -(d.at(i, t).shifted(-pv));
      add_row(d, i, t, f);
      add_row(res.left, i, t, f);
      // left_inv: column op with +f^{-1}... inverse of (row_i += f row_t) is col_t -= f col_i
      for (int r = 0; r < res.left_inv.rows(); ++r)
        res.left_inv.at(r, t) -= f * res.left_inv.at(r, i);
    }
    for (int j = t + 1; j < d.cols(); ++j) {
      if (d.at(t, j).is_zero()) continue;
      Series f = -(d.at(t, j).shifted(-pv));
      add_col(d, j, t, f);
      add_col(res.right, j, t, f);
      for (int c = 0; c < res.right_inv.cols(); ++c)
        res.right_inv.at(t, c) -= f * res.right_inv.at(j, c);
    }
    res.divisors.push_back(pv);
  }
  return res;
}

std::vector<Series> solve_unit_system(SeriesMatrix a, std::vector<Series> b) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n)
    throw arith_error("solve_unit_system: shape mismatch");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  for (int t = 0; t < n; ++t) {
    int pi = -1;
    for (int i = t; i < n; ++i)
      if (a.at(i, t).is_unit()) {
        pi = i;
        break;
      }
    if (pi < 0) throw arith_error("solve_unit_system: no unit pivot");
    if (pi != t) {
      swap_rows(a, t, pi);
      std::swap(b[t], b[pi]);
    }
    Series inv = a.at(t, t).inverse();
    for (int j = t; j < n; ++j) a.at(t, j) = inv * a.at(t, j);
    b[t] = inv * b[t];
    for (int i = 0; i < n; ++i) {
      if (i == t || a.at(i, t).is_zero()) continue;
      Series f = a.at(i, t);
      for (int j = t; j < n; ++j) a.at(i, j) -= f * a.at(t, j);
      b[i] -= f * b[t];
    }
  }
  return b;
}

} // namespace qk
