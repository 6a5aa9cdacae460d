#include "qk/twist.hpp"

namespace qk {

Series Tensor2::coeff(const Expo& l, const Expo& r) const {
  auto it = terms_.find({l, r});
  return it == terms_.end() ? Series::zero(order_) : it->second;
}

void Tensor2::add_term(const Expo& l, const Expo& r, const Series& c) {
  if (c.is_zero()) return;
  Key k{l, r};
  auto [it, inserted] = terms_.emplace(std::move(k), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Tensor2 Tensor2::operator+(const Tensor2& o) const {
  Tensor2 t = *this;
  t += o;
  return t;
}
Tensor2 Tensor2::operator-(const Tensor2& o) const {
  Tensor2 t = *this;
  for (const auto& [k, c] : o.terms_) t.add_term(k.first, k.second, -c);
  return t;
}
Tensor2& Tensor2::operator+=(const Tensor2& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}
Tensor2 Tensor2::scaled(const Series& c) const {
  Tensor2 t(n_, order_);
  if (c.is_zero()) return t;
  for (const auto& [k, x] : terms_) t.add_term(k.first, k.second, x * c);
  return t;
}

Tensor2 tensor_mul(const Tensor2& a, const Tensor2& b, const Presentation& p) {
  Tensor2 t(a.gens(), a.trunc_order());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      Series c = ca * cb;
      if (c.is_zero()) continue;
      NCPoly l = mul_expo(NCPoly::monomial(ka.first, Series::one(p.trunc_order()),
                                           p.gens(), p.trunc_order()),
                          kb.first, p);
      NCPoly r = mul_expo(NCPoly::monomial(ka.second, Series::one(p.trunc_order()),
                                           p.gens(), p.trunc_order()),
                          kb.second, p);
      for (const auto& [el, cl] : l.terms())
        for (const auto& [er, cr] : r.terms()) t.add_term(el, er, c * cl * cr);
    }
  return t;
}

NCPoly counit_right(const Tensor2& t) {
  NCPoly r(t.gens(), t.trunc_order());
  for (const auto& [k, c] : t.terms())
    if (expo_degree(k.second) == 0) r.add_term(k.first, c);
  return r;
}

NCPoly counit_left(const Tensor2& t) {
  NCPoly r(t.gens(), t.trunc_order());
  for (const auto& [k, c] : t.terms())
    if (expo_degree(k.first) == 0) r.add_term(k.second, c);
  return r;
}

Tensor2 coproduct_pbw(const Expo& m, const Presentation& p) {
  const int n = p.gens();
  const int N = p.trunc_order();
  Tensor2 acc = Tensor2::one(n, N);
  for (int i = 0; i < n; ++i) {
    if (m[i] == 0) continue;
    Tensor2 prim(n, N);
    Expo gi(n, 0);
    gi[i] = 1;
    prim.add_term(gi, Expo(n, 0), Series::one(N));
    prim.add_term(Expo(n, 0), gi, Series::one(N));
    for (int k = 0; k < m[i]; ++k) acc = tensor_mul(acc, prim, p);
  }
  return acc;
}

TwistContext::TwistContext(TwistData data) : data_(std::move(data)) {
  const int n = data_.base.gens();
  const int N = data_.base.trunc_order();
  // rho = sum of signed X_i (x) X_j; R = exp(h rho), R^{-1} = exp(-h rho)
  Tensor2 rho(n, N);
  for (const auto& [sign, i, j] : data_.r_exp) {
    Expo l(n, 0), r(n, 0);
    l.at(i) = 1;
    r.at(j) = 1;
    rho.add_term(l, r, Series::from_rat(sign, N));
  }
  Tensor2 hrho = rho.scaled(Series::h(N));
  r_ = Tensor2::one(n, N);
  r_inv_ = Tensor2::one(n, N);
  Tensor2 pow = Tensor2::one(n, N);
  Rat fact = 1;
  for (int k = 1; k <= N; ++k) {
    pow = tensor_mul(pow, hrho, data_.base);
    if (pow.is_zero()) break;
    fact *= k;
    Series inv_fact = Series::from_rat(1 / fact, N);
    r_ += pow.scaled(inv_fact);
    r_inv_ += pow.scaled(k % 2 ? -inv_fact : inv_fact);
  }
}

const Tensor2& TwistContext::twisted_coproduct(const Expo& m) const {
  auto it = coproduct_cache_.find(m);
  if (it != coproduct_cache_.end()) return it->second;
  Tensor2 d = coproduct_pbw(m, data_.base);
  if (!data_.r_exp.empty())
    d = tensor_mul(tensor_mul(r_inv_, d, data_.base), r_, data_.base);
  return coproduct_cache_.emplace(m, std::move(d)).first->second;
}

Series TwistContext::xi_product_value(const std::vector<int>& legs, const Expo& m) const {
  const int N = trunc_order();
  if (legs.empty()) return expo_degree(m) == 0 ? Series::one(N) : Series::zero(N);
  if (legs.size() == 1) {
    Expo g(gens(), 0);
    g.at(legs[0]) = 1;
    return m == g ? Series::one(N) : Series::zero(N);
  }
  auto key = std::make_pair(legs, m);
  auto it = value_cache_.find(key);
  if (it != value_cache_.end()) return it->second;

  Expo g(gens(), 0);
  g.at(legs[0]) = 1;
  std::vector<int> rest(legs.begin() + 1, legs.end());
  Series acc(N);
  for (const auto& [k, c] : twisted_coproduct(m).terms()) {
    if (k.first != g) continue;
    Series sub = xi_product_value(rest, k.second);
    if (!sub.is_zero()) acc += c * sub;
  }
  value_cache_.emplace(std::move(key), acc);
  return acc;
}

Tensor2 twist_coproduct(const TwistContext& ctx, const Expo& m) {
  return ctx.twisted_coproduct(m);
}

} // namespace qk
