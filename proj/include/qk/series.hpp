#pragma once

#include "qk/rational.hpp"

#include <stdexcept>
#include <vector>

namespace qk {

struct arith_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of Q[h]/(h^(N+1)) with exact rational coefficients.
//
// Operands of a binary operation must share the truncation order N.
// Downward h-shifts lose the top coefficients; the loss is tracked in
// effective_prec(): coefficients at indices > effective_prec() are stored
// as zero but are not constrained by the computation that produced them.
class Series {
public:
  Series() : order_(0), prec_(0), c_(1) {}
  explicit Series(int trunc_order)
      : order_(trunc_order), prec_(trunc_order), c_(trunc_order + 1) {
    if (trunc_order < 0) throw arith_error("truncation order must be >= 0");
  }

  static Series zero(int order) { return Series(order); }
  static Series one(int order) { return from_rat(1, order); }
  static Series h(int order) { return monomial(1, 1, order); }
  static Series from_rat(const Rat& r, int order) { return monomial(r, 0, order); }
  // c * h^k
  static Series monomial(const Rat& c, int k, int order) {
    Series s(order);
    if (k < 0) throw arith_error("negative h-power literal");
    if (k <= order) s.c_[k] = c;
    s.canonicalize();
    return s;
  }

  int trunc_order() const { return order_; }
  int effective_prec() const { return prec_; }
  const Rat& coeff(int k) const { return c_.at(k); }
  const std::vector<Rat>& coeffs() const { return c_; }

  void set_coeff(int k, const Rat& v) {
    c_.at(k) = v;
    c_[k].canonicalize();
  }

  bool is_zero() const {
    for (const Rat& x : c_)
      if (x != 0) return false;
    return true;
  }
  // Index of the first nonzero coefficient; order+1 when zero.
  int valuation() const {
    for (int k = 0; k <= order_; ++k)
      if (c_[k] != 0) return k;
    return order_ + 1;
  }
  bool is_unit() const { return c_[0] != 0; }
  const Rat& constant() const { return c_[0]; }

  Series operator-() const {
    Series r = *this;
    for (Rat& x : r.c_) x = -x;
    return r;
  }
  Series operator+(const Series& o) const {
    check(o);
    Series r = *this;
    for (int k = 0; k <= order_; ++k) r.c_[k] += o.c_[k];
    r.prec_ = std::min(prec_, o.prec_);
    return r;
  }
  Series operator-(const Series& o) const { return *this + (-o); }
  Series operator*(const Series& o) const {
    check(o);
    Series r(order_);
    for (int i = 0; i <= order_; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; i + j <= order_; ++j) {
        if (o.c_[j] == 0) continue;
        r.c_[i + j] += c_[i] * o.c_[j];
      }
    }
    r.prec_ = std::min({prec_ + o.valuation(), o.prec_ + valuation(), order_});
    if (r.prec_ < 0) r.prec_ = 0;
    return r;
  }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series scaled(const Rat& r) const {
    Series s = *this;
    for (Rat& x : s.c_) {
      x *= r;
      x.canonicalize();
    }
    return s;
  }

  // Multiplication by h^k. Negative k requires the low |k| coefficients to
  // vanish (exact divisibility); the freed top coefficients are recorded as
  // unconstrained via effective_prec.
  Series shifted(int k) const {
    Series r(order_);
    if (k >= 0) {
      for (int i = 0; i + k <= order_; ++i) r.c_[i + k] = c_[i];
      r.prec_ = std::min(prec_ + k, order_);
    } else {
      int d = -k;
      for (int i = 0; i < d && i <= order_; ++i)
        if (c_[i] != 0) throw arith_error("inexact division by h");
      for (int i = d; i <= order_; ++i) r.c_[i - d] = c_[i];
      r.prec_ = std::max(prec_ - d, 0);
    }
    return r;
  }

  // Multiplicative inverse of a unit.
  Series inverse() const {
    if (!is_unit()) throw arith_error("series is not a unit (zero constant term)");
    Series r(order_);
    r.c_[0] = 1 / c_[0];
    for (int k = 1; k <= order_; ++k) {
      Rat acc = 0;
      for (int i = 1; i <= k; ++i) acc += c_[i] * r.c_[k - i];
      r.c_[k] = -acc / c_[0];
      r.c_[k].canonicalize();
    }
    r.prec_ = prec_;
    return r;
  }

  bool operator==(const Series& o) const { return order_ == o.order_ && c_ == o.c_; }
  bool operator!=(const Series& o) const { return !(*this == o); }
  // Coefficient-wise < by h-power, for canonical container ordering.
  bool operator<(const Series& o) const {
    if (order_ != o.order_) return order_ < o.order_;
    for (int k = 0; k <= order_; ++k)
      if (c_[k] != o.c_[k]) return c_[k] < o.c_[k];
    return false;
  }

  std::string str() const;

private:
  void check(const Series& o) const {
    if (order_ != o.order_) throw arith_error("mismatched truncation orders");
  }
  void canonicalize() {
    for (Rat& x : c_) x.canonicalize();
  }

  int order_;
  int prec_;
  std::vector<Rat> c_;
};

} // namespace qk
