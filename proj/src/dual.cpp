#include "qk/dual.hpp"

namespace qk {

namespace {

void enumerate(int n, int max_deg, int pos, Expo& cur, int used, std::vector<Expo>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k + used <= max_deg; ++k) {
    cur[pos] = k;
    enumerate(n, max_deg, pos + 1, cur, used + k, out);
  }
  cur[pos] = 0;
}

std::vector<int> legs_of(const Expo& alpha) {
  std::vector<int> legs;
  for (size_t i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) legs.push_back(static_cast<int>(i));
  return legs;
}

} // namespace

std::vector<Expo> multi_indices(int n, int max_deg) {
  std::vector<Expo> out;
  Expo cur(n, 0);
  enumerate(n, max_deg, 0, cur, 0, out);
  std::stable_sort(out.begin(), out.end(), [](const Expo& a, const Expo& b) {
    int da = expo_degree(a), db = expo_degree(b);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

Rat expo_factorial(const Expo& e) {
  Rat f = 1;
  for (int x : e)
    for (int k = 2; k <= x; ++k) f *= k;
  return f;
}

SeriesMatrix pairing_matrix(const TwistContext& ctx, int degree_cap,
                            std::vector<Expo>* index_out) {
  std::vector<Expo> idx = multi_indices(ctx.gens(), degree_cap);
  const int m = static_cast<int>(idx.size());
  SeriesMatrix p(m, m, ctx.trunc_order());
  for (int i = 0; i < m; ++i) {
    std::vector<int> legs = legs_of(idx[i]);
    for (int j = 0; j < m; ++j) {
      int da = expo_degree(idx[i]), db = expo_degree(idx[j]);
      if (da < db || (da - db) % 2) continue;
      p.at(i, j) = ctx.xi_product_value(legs, idx[j]);
    }
  }
  if (index_out) *index_out = std::move(idx);
  return p;
}

NCPoly dual_product(int i, int j, const TwistContext& ctx, int degree_cap) {
  const int n = ctx.gens();
  const int N = ctx.trunc_order();
  Expo gi(n, 0), gj(n, 0);
  gi.at(i) = 1;
  gj.at(j) = 1;

  // values of the commutator functional, with the cap guard two degrees out
  std::map<Expo, Series> f;
  for (const Expo& beta : multi_indices(n, degree_cap + 2)) {
    if (expo_degree(beta) == 0) continue;
    const Tensor2& cop = ctx.twisted_coproduct(beta);
    Series v = cop.coeff(gi, gj) - cop.coeff(gj, gi);
    if (v.is_zero()) continue;
    if (expo_degree(beta) > degree_cap)
      throw degree_cap_error("dual_product: functional has support above the degree cap");
    f.emplace(beta, v);
  }

  // back-substitution against the degree-triangular pairing matrix
  NCPoly result(n, N);
  std::vector<Expo> idx = multi_indices(n, degree_cap);
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
    const Expo& beta = *it;
    const int d = expo_degree(beta);
    if (d == 0) continue;
    Series rhs = Series::zero(N);
    if (auto fit = f.find(beta); fit != f.end()) rhs = fit->second;
    for (const auto& [alpha, c] : result.terms()) {
      int da = expo_degree(alpha);
      if (da <= d || (da - d) % 2) continue;
      Series pv = ctx.xi_product_value(legs_of(alpha), beta);
      if (!pv.is_zero()) rhs -= c * pv;
    }
    rhs = rhs.scaled(1 / expo_factorial(beta));
    result.add_term(beta, rhs);
  }
  return result;
}

Tensor2 dual_coproduct(int i, const TwistContext& ctx, int degree_cap) {
  const int n = ctx.gens();
  const int N = ctx.trunc_order();
  Expo gi(n, 0);
  gi.at(i) = 1;
  MulCache cm(ctx.base());

  // g[beta,gamma] = <xi_i, X^beta X^gamma> (classical product), guard at cap+2
  std::map<Tensor2::Key, Series> g;
  std::vector<Expo> all = multi_indices(n, degree_cap + 2);
  for (const Expo& beta : all) {
    int db = expo_degree(beta);
    if (db > degree_cap + 2) continue;
    NCPoly left = NCPoly::monomial(beta, Series::one(N), n, N);
    for (const Expo& gamma : all) {
      if (db + expo_degree(gamma) > degree_cap + 2) continue;
      Series v = cm.mul_expo(left, gamma).coeff(gi);
      if (v.is_zero()) continue;
      if (db > degree_cap || expo_degree(gamma) > degree_cap)
        throw degree_cap_error("dual_coproduct: functional has support above the degree cap");
      g.emplace(Tensor2::Key{beta, gamma}, v);
    }
  }

  // back-substitute by total degree, descending
  Tensor2 result(n, N);
  std::vector<Tensor2::Key> pairs;
  std::vector<Expo> caps = multi_indices(n, degree_cap);
  for (const Expo& b : caps)
    for (const Expo& c : caps)
      if (expo_degree(b) + expo_degree(c) <= degree_cap + 2) pairs.push_back({b, c});
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return expo_degree(a.first) + expo_degree(a.second) >
           expo_degree(b.first) + expo_degree(b.second);
  });
  for (const auto& key : pairs) {
    const auto& [beta, gamma] = key;
    Series rhs = Series::zero(N);
    if (auto it = g.find(key); it != g.end()) rhs = it->second;
    for (const auto& [k2, c] : result.terms()) {
      int da = expo_degree(k2.first), db2 = expo_degree(k2.second);
      if (da < expo_degree(beta) || db2 < expo_degree(gamma)) continue;
      if (da + db2 <= expo_degree(beta) + expo_degree(gamma)) continue;
      Series pl = ctx.xi_product_value(legs_of(k2.first), beta);
      if (pl.is_zero()) continue;
      Series pr = ctx.xi_product_value(legs_of(k2.second), gamma);
      if (pr.is_zero()) continue;
      rhs -= c * pl * pr;
    }
    rhs = rhs.scaled(1 / (expo_factorial(beta) * expo_factorial(gamma)));
    result.add_term(beta, gamma, rhs);
  }
  return result;
}

Presentation vee_presentation(const Presentation& f) {
  if (!f.brackets_h_divisible())
    throw presentation_error(
        "vee_presentation: input commutators are not divisible by h");
  Presentation p(f.gens(), f.trunc_order(), f.gen_names(),
                 f.name().empty() ? "" : f.name() + "-vee");
  for (int i = 0; i < f.gens(); ++i)
    for (int j = i + 1; j < f.gens(); ++j) {
      NCPoly g;
      try {
        g = rescale_shift(f.bracket(i, j), +1, -2);
      } catch (const arith_error&) {
        throw presentation_error(
            "vee_presentation: inexact h-division (relation outside h * span)");
      }
      p.set_bracket(i, j, g);
    }
  p.validate();
  return p;
}

Presentation f_presentation(const Presentation& p) {
  Presentation f(p.gens(), p.trunc_order(), p.gen_names(),
                 p.name().empty() ? "" : p.name() + "-f");
  for (int i = 0; i < p.gens(); ++i)
    for (int j = i + 1; j < p.gens(); ++j) {
      NCPoly g;
      try {
        g = rescale_shift(p.bracket(i, j), -1, +2);
      } catch (const arith_error&) {
        throw presentation_error(
            "f_presentation: inexact h-division (presentation outside the vee image)");
      }
      f.set_bracket(i, j, g);
    }
  if (!f.brackets_h_divisible())
    throw presentation_error("f_presentation: result has a commutator not divisible by h");
  return f;
}

Presentation twist_dual_presentation(const TwistContext& ctx, int degree_cap) {
  const int n = ctx.gens();
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
  Presentation f(n, ctx.trunc_order(), names, "dual");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) f.set_bracket(i, j, dual_product(i, j, ctx, degree_cap));
  return vee_presentation(f);
}

} // namespace qk
