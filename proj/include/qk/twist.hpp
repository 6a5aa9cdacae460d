#pragma once

#include "qk/ncpoly.hpp"

#include <map>
#include <memory>

namespace qk {

// Element of U (x) U, both legs in PBW normal form.
class Tensor2 {
public:
  using Key = std::pair<Expo, Expo>;

  Tensor2() : n_(0), order_(0) {}
  Tensor2(int n, int order) : n_(n), order_(order) {}

  static Tensor2 one(int n, int order) {
    Tensor2 t(n, order);
    t.add_term(Expo(n, 0), Expo(n, 0), Series::one(order));
    return t;
  }

  int gens() const { return n_; }
  int trunc_order() const { return order_; }
  const std::map<Key, Series>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Series coeff(const Expo& l, const Expo& r) const;
  void add_term(const Expo& l, const Expo& r, const Series& c);

  Tensor2 operator+(const Tensor2& o) const;
  Tensor2 operator-(const Tensor2& o) const;
  Tensor2& operator+=(const Tensor2& o);
  Tensor2 scaled(const Series& c) const;

  bool operator==(const Tensor2& o) const {
    return n_ == o.n_ && order_ == o.order_ && terms_ == o.terms_;
  }

private:
  int n_, order_;
  std::map<Key, Series> terms_;
};

// Leg-wise product in U (x) U against the given presentation.
Tensor2 tensor_mul(const Tensor2& a, const Tensor2& b, const Presentation& p);
// (id (x) eps) and (eps (x) id) legs.
NCPoly counit_right(const Tensor2& t); // (id (x) eps)
NCPoly counit_left(const Tensor2& t);  // (eps (x) id)

// Coproduct with primitive generators: Delta(X^m) computed as the PBW product
// of (e_i (x) 1 + 1 (x) e_i)^{m_i} inside U (x) U.
Tensor2 coproduct_pbw(const Expo& m, const Presentation& p);

// Twist by R = exp(h * sum of signed X_i (x) X_j).
struct TwistData {
  Presentation base;                            // classical presentation of U(g)
  std::vector<std::tuple<int, int, int>> r_exp; // (sign, i, j), 0-based gens
};

class TwistContext {
public:
  explicit TwistContext(TwistData data);

  const Presentation& base() const { return data_.base; }
  int gens() const { return data_.base.gens(); }
  int trunc_order() const { return data_.base.trunc_order(); }
  const Tensor2& r() const { return r_; }
  const Tensor2& r_inv() const { return r_inv_; }

  // Delta_R(X^m) = R^{-1} Delta(X^m) R, cached per monomial.
  const Tensor2& twisted_coproduct(const Expo& m) const;

  // <xi_{L0} (x) ... (x) xi_{Lk}, iterated twisted coproduct of X^m>: the
  // value of the ordered functional product on a PBW monomial.
  Series xi_product_value(const std::vector<int>& legs, const Expo& m) const;

private:
  TwistData data_;
  Tensor2 r_, r_inv_;
  mutable std::map<Expo, Tensor2> coproduct_cache_;
  mutable std::map<std::pair<std::vector<int>, Expo>, Series> value_cache_;
};

Tensor2 twist_coproduct(const TwistContext& ctx, const Expo& m);

} // namespace qk
