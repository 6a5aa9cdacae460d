#include "qk/koszul.hpp"

#include "qk/dual.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qk {

std::vector<Subset> subsets_of_size(int n, int q) {
  std::vector<Subset> out;
  if (q < 0 || q > n) return out;
  Subset cur(q);
  // lexicographic enumeration
  std::function<void(int, int)> rec = [&](int start, int pos) {
    if (pos == q) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v < n; ++v) {
      cur[pos] = v;
      rec(v + 1, pos + 1);
    }
  };
  rec(0, 0);
  return out;
}

std::pair<int, Subset> wedge_insert(int a, const Subset& s) {
  Subset r;
  r.reserve(s.size() + 1);
  int sign = 1;
  bool placed = false;
  for (int x : s) {
    if (x == a) return {0, {}};
    if (!placed && a < x) {
      r.push_back(a);
      placed = true;
    }
    if (!placed) sign = -sign;
    r.push_back(x);
  }
  if (!placed) r.push_back(a);
  return {sign, r};
}

void ChainComplex::set_diff(int q, const Subset& s, Chain value) {
  // drop zero coefficients for canonical storage
  for (auto it = value.begin(); it != value.end();)
    it = it->second.is_zero() ? value.erase(it) : std::next(it);
  diffs_.at(q)[s] = std::move(value);
}

const Chain& ChainComplex::diff(int q, const Subset& s) const {
  static const Chain empty;
  const auto& layer = diffs_.at(q);
  auto it = layer.find(s);
  return it == layer.end() ? empty : it->second;
}

Chain ChainComplex::apply(int q, const Chain& x) const {
  MulCache cache(p_);
  return apply(q, x, cache);
}

Chain ChainComplex::apply(int q, const Chain& x, MulCache& cache) const {
  Chain out;
  for (const auto& [s, u] : x) {
    if (u.is_zero()) continue;
    for (const auto& [t, coeff] : diff(q, s)) {
      NCPoly prod = cache.mul(u, coeff);
      if (prod.is_zero()) continue;
      auto [it, inserted] = out.emplace(t, prod);
      if (!inserted) it->second += prod;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

Series ChainComplex::apply_counit(const Chain& x) const {
  Series acc(p_.trunc_order());
  for (const auto& [s, u] : x) {
    if (!s.empty()) throw koszul_error("counit applied to a positive-degree chain");
    acc += u.constant_series();
  }
  return acc;
}

bool ChainComplex::operator==(const ChainComplex& o) const {
  if (p_.gens() != o.p_.gens() || p_.trunc_order() != o.p_.trunc_order()) return false;
  return diffs_ == o.diffs_;
}

bool chain_is_zero(const Chain& x) {
  for (const auto& [s, u] : x)
    if (!u.is_zero()) return false;
  return true;
}

Chain chain_add(const Chain& a, const Chain& b) {
  Chain r = a;
  for (const auto& [s, u] : b) {
    auto [it, inserted] = r.emplace(s, u);
    if (!inserted) it->second += u;
  }
  for (auto it = r.begin(); it != r.end();)
    it = it->second.is_zero() ? r.erase(it) : std::next(it);
  return r;
}

Chain chain_sub(const Chain& a, const Chain& b) {
  Chain nb;
  for (const auto& [s, u] : b) nb.emplace(s, -u);
  return chain_add(a, nb);
}

Chain chain_scaled(const Chain& a, const Series& c) {
  Chain r;
  for (const auto& [s, u] : a) {
    NCPoly v = u.scaled(c);
    if (!v.is_zero()) r.emplace(s, v);
  }
  return r;
}

Chain chain_shifted(const Chain& a, int k) {
  Chain r;
  for (const auto& [s, u] : a) {
    NCPoly v = u.shifted(k);
    if (!v.is_zero()) r.emplace(s, v);
  }
  return r;
}

int chain_valuation(const Chain& a, int order) {
  int v = order + 1;
  for (const auto& [s, u] : a) v = std::min(v, u.valuation());
  return v;
}

ChainComplex classical_koszul(const Presentation& p) {
  const int n = p.gens();
  const int N = p.trunc_order();
  ChainComplex c(p);
  for (int q = 1; q <= n; ++q) {
    for (const Subset& s : subsets_of_size(n, q)) {
      Chain d;
      for (int i = 0; i < q; ++i) {
        Subset rest;
        for (int k = 0; k < q; ++k)
          if (k != i) rest.push_back(s[k]);
        Series sign = Series::from_rat(i % 2 ? -1 : 1, N);
        NCPoly coeff = NCPoly::gen(s[i], n, N).scaled(sign);
        auto [it, inserted] = d.emplace(rest, coeff);
        if (!inserted) it->second += coeff;
      }
      for (int k = 0; k < q; ++k)
        for (int l = k + 1; l < q; ++l) {
          Subset rest;
          for (int m = 0; m < q; ++m)
            if (m != k && m != l) rest.push_back(s[m]);
          for (int a = 0; a < n; ++a) {
            Rat cst = p.classical(s[k], s[l], a);
            if (cst == 0) continue;
            auto [wsign, wedge] = wedge_insert(a, rest);
            if (wsign == 0) continue;
            Rat value = ((k + l) % 2 ? -1 : 1) * wsign * cst;
            NCPoly coeff =
                NCPoly::monomial(Expo(n, 0), Series::from_rat(value, N), n, N);
            auto [it, inserted] = d.emplace(wedge, coeff);
            if (!inserted) it->second += coeff;
          }
        }
      c.set_diff(q, s, std::move(d));
    }
  }
  // Jacobi violations surface as a nonzero square
  for (int q = 2; q <= n; ++q)
    for (const Subset& s : subsets_of_size(n, q)) {
      Chain sq = c.apply(q - 1, c.diff(q, s));
      if (!chain_is_zero(sq))
        throw koszul_error("classical Koszul differential does not square to zero "
                           "(Jacobi violation)");
    }
  return c;
}

namespace {

// Contracting homotopy of the symmetric-algebra Koszul complex at symbol
// level: s(X^a (x) e_T) = sum_j X^{a - eps_j} (x) e_j ^ e_T. Together with the
// multiplication part of the differential, ds + sd = (degree + q) id.
Chain symbol_homotopy(const Chain& symbol, int n, int N) {
  Chain out;
  for (const auto& [t, u] : symbol) {
    for (const auto& [e, coeff] : u.terms()) {
      for (int j = 0; j < n; ++j) {
        if (e[j] == 0) continue;
        auto [sign, wedge] = wedge_insert(j, t);
        if (sign == 0) continue;
        Expo reduced = e;
        reduced[j] -= 1;
        NCPoly add = NCPoly::monomial(
            reduced, coeff.scaled(Rat(e[j]) * sign), n, N);
        auto [it, inserted] = out.emplace(wedge, add);
        if (!inserted) it->second += add;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// h^v-layer of a chain, restricted to its maximal PBW degree d, as exact
// rational data re-embedded at truncation N.
Chain top_symbol(const Chain& r, int v, int d, int n, int N) {
  Chain out;
  for (const auto& [t, u] : r) {
    NCPoly part(n, N);
    for (const auto& [e, c] : u.terms()) {
      if (expo_degree(e) != d || c.coeff(v) == 0) continue;
      part.add_term(e, Series::from_rat(c.coeff(v), N));
    }
    if (!part.is_zero()) out.emplace(t, part);
  }
  return out;
}

} // namespace

Chain lift_preimage(const ChainComplex& c, int q, const Chain& target, int degree_cap) {
  const Presentation& p = c.presentation();
  const int n = p.gens();
  const int N = p.trunc_order();
  MulCache cache(p);

  // cycle precondition
  if (q >= 2) {
    if (!chain_is_zero(c.apply(q - 1, target, cache)))
      throw koszul_error("lift_preimage: target is not a cycle");
  } else if (q == 1) {
    if (!c.apply_counit(target).is_zero())
      throw koszul_error("lift_preimage: target has nonzero counit");
  }

  Chain x;
  Chain r = target;
  int last_v = -1, last_d = degree_cap + 1;
  while (!chain_is_zero(r)) {
    int v = chain_valuation(r, N);
    int d = -1;
    for (const auto& [t, u] : r)
      for (const auto& [e, coeff] : u.terms())
        if (coeff.coeff(v) != 0) d = std::max(d, expo_degree(e));
    if (d > degree_cap)
      throw koszul_error("lift_preimage: degree cap exceeded");
    if (v == last_v && d >= last_d)
      throw koszul_error("lift_preimage: residual degree fails to decrease "
                         "(target not in the image?)");
    last_v = v;
    last_d = d;

    Chain sym = top_symbol(r, v, d, n, N);
    int euler = d + (q - 1);
    if (euler == 0)
      throw koszul_error("lift_preimage: scalar residual in exterior degree 0");
    Chain lifted = chain_shifted(
        chain_scaled(symbol_homotopy(sym, n, N), Series::from_rat(Rat(1, euler), N)), v);
    x = chain_add(x, lifted);
    r = chain_sub(target, c.apply(q, x, cache));
  }
  return x;
}

ChainComplex deform_koszul(const Presentation& p) {
  const int n = p.gens();
  const int N = p.trunc_order();
  ChainComplex classical = classical_koszul(p.classical_limit().with_order(N));
  ChainComplex c(p);

  // q = 1: right multiplication by the generator
  for (const Subset& s : subsets_of_size(n, 1))
    c.set_diff(1, s, Chain{{Subset{}, NCPoly::gen(s[0], n, N)}});

  // q = 2: classical part plus the closed-form correction obtained by writing
  // the bracket remainder with left coefficients (strip the top generator)
  for (const Subset& s : subsets_of_size(n, 2)) {
    int i = s[0], j = s[1];
    Chain d = classical.diff(2, s);
    NCPoly rest = p.bracket(i, j);
    for (int a = 0; a < n; ++a) {
      Rat cst = p.classical(i, j, a);
      if (cst == 0) continue;
      rest -= NCPoly::gen(a, n, N).scaled(Series::from_rat(cst, N));
    }
    for (const auto& [e, coeff] : rest.terms()) {
      int m = expo_top(e);
      Expo head = e;
      head[m] -= 1;
      NCPoly corr = NCPoly::monomial(head, -coeff, n, N);
      auto [it, inserted] = d.emplace(Subset{m}, corr);
      if (!inserted) it->second += corr;
    }
    c.set_diff(2, s, std::move(d));
  }

  // q >= 3: lift the h-divisible defect of the classical leading part
  for (int q = 3; q <= n; ++q) {
    for (const Subset& s : subsets_of_size(n, q)) {
      Chain base = classical.diff(q, s);
      Chain defect = c.apply(q - 1, base);
      if (!chain_is_zero(defect)) {
        if (chain_valuation(defect, N) < 1)
          throw koszul_error("deform_koszul: defect is not divisible by h");
        Chain w = lift_preimage(c, q - 1, chain_shifted(defect, -1));
        base = chain_sub(base, chain_shifted(w, 1));
      }
      c.set_diff(q, s, std::move(base));
    }
  }
  return c;
}

QfshaResult deform_koszul_qfsha(const Presentation& f) {
  if (!f.brackets_h_divisible())
    throw presentation_error("deform_koszul_qfsha: commutators must be divisible by h");
  const int n = f.gens();
  const int N = f.trunc_order();

  QfshaResult res;
  ChainComplex c(f);

  // classical constants of the dual Lie algebra: h^1 coefficients of the
  // degree-1 bracket parts
  auto dual_constant = [&](int i, int j, int a) -> Rat {
    Expo e(n, 0);
    e.at(a) = 1;
    if (i < j) return f.bracket(i, j).coeff(e).coeff(1);
    if (i > j) return -f.bracket(j, i).coeff(e).coeff(1);
    return 0;
  };

  for (const Subset& s : subsets_of_size(n, 1))
    c.set_diff(1, s, Chain{{Subset{}, NCPoly::gen(s[0], n, N)}});

  auto leading_part = [&](int q, const Subset& s) {
    Chain d;
    for (int i = 0; i < q; ++i) {
      Subset rest;
      for (int k = 0; k < q; ++k)
        if (k != i) rest.push_back(s[k]);
      NCPoly coeff =
          NCPoly::gen(s[i], n, N).scaled(Series::from_rat(i % 2 ? -1 : 1, N));
      auto [it, inserted] = d.emplace(rest, coeff);
      if (!inserted) it->second += coeff;
    }
    for (int k = 0; k < q; ++k)
      for (int l = k + 1; l < q; ++l) {
        Subset rest;
        for (int m = 0; m < q; ++m)
          if (m != k && m != l) rest.push_back(s[m]);
        for (int a = 0; a < n; ++a) {
          Rat cst = dual_constant(s[k], s[l], a);
          if (cst == 0) continue;
          auto [wsign, wedge] = wedge_insert(a, rest);
          if (wsign == 0) continue;
          // bracket terms carry an explicit h
          Series value = Series::monomial(((k + l) % 2 ? -1 : 1) * wsign * cst, 1, N);
          NCPoly coeff = NCPoly::monomial(Expo(n, 0), value, n, N);
          auto [it, inserted] = d.emplace(wedge, coeff);
          if (!inserted) it->second += coeff;
        }
      }
    return d;
  };

  auto record_alpha = [&](int q, const Subset& s, const Chain& corr) {
    // corr = h * alpha; alpha in I means eps(alpha) is divisible by h,
    // i.e. the constant coefficient of corr has h-valuation >= 2
    (void)s;
    for (const auto& [t, u] : corr) {
      Series c0 = u.constant_series();
      if (!c0.is_zero() && c0.valuation() < 2) {
        res.alpha_in_i = false;
        std::ostringstream os;
        os << "correction at q=" << q << " has a counit outside h*K[[h]]";
        res.alpha_violations.push_back(os.str());
      }
    }
  };

  for (int q = 2; q <= n; ++q) {
    for (const Subset& s : subsets_of_size(n, q)) {
      Chain base = leading_part(q, s);
      Chain defect = c.apply(q - 1, base);
      Chain corr; // the -h*alpha part
      if (!chain_is_zero(defect)) {
        if (chain_valuation(defect, N) < 1)
          throw koszul_error("deform_koszul_qfsha: defect is not divisible by h");
        Chain w = lift_preimage(c, q - 1, chain_shifted(defect, -1));
        corr = chain_shifted(w, 1);
        record_alpha(q, s, corr);
        base = chain_sub(base, corr);
      }
      c.set_diff(q, s, std::move(base));
    }
  }
  res.f_complex = c;

  // companion complex over the rescaled generators: every entry P becomes
  // h^{-1} * P(h x)
  ChainComplex vee(vee_presentation(f));
  for (int q = 1; q <= n; ++q)
    for (const Subset& s : subsets_of_size(n, q)) {
      Chain d;
      for (const auto& [t, u] : c.diff(q, s)) {
        NCPoly entry = rescale_shift(u, +1, -1);
        if (!entry.is_zero()) d.emplace(t, entry);
      }
      vee.set_diff(q, s, std::move(d));
    }
  res.vee_complex = vee;
  return res;
}

ComplexCheck complex_check(const ChainComplex& c) {
  ComplexCheck rep;
  const Presentation& p = c.presentation();
  const int n = p.gens();
  const int N = p.trunc_order();
  MulCache cache(p);

  for (int q = 2; q <= n; ++q)
    for (const Subset& s : subsets_of_size(n, q)) {
      Chain sq = c.apply(q - 1, c.diff(q, s), cache);
      if (!chain_is_zero(sq)) {
        rep.boundary_squares_to_zero = false;
        std::ostringstream os;
        os << "d(d(basis)) != 0 at q=" << q;
        rep.failures.push_back(os.str());
      }
    }
  // q = 1 composes with the counit
  for (const Subset& s : subsets_of_size(n, 2)) {
    Chain img = c.diff(2, s);
    Chain once = c.apply(1, img, cache);
    if (!once.empty() && !c.apply_counit(once).is_zero()) {
      rep.boundary_squares_to_zero = false;
      rep.failures.push_back("counit of d_1 d_2 is nonzero");
    }
  }

  ChainComplex classical = classical_koszul(p.classical_limit());
  for (int q = 1; q <= n; ++q)
    for (const Subset& s : subsets_of_size(n, q)) {
      Chain reduced;
      for (const auto& [t, u] : c.diff(q, s)) {
        NCPoly r = u.h0();
        if (!r.is_zero()) reduced.emplace(t, r);
      }
      Chain expect = classical.diff(q, s);
      // compare as order-0 chains
      Chain expect0;
      for (const auto& [t, u] : expect) expect0.emplace(t, u.h0());
      if (reduced != expect0) {
        rep.graded_limit_matches_classical = false;
        std::ostringstream os;
        os << "mod-h reduction differs from the classical differential at q=" << q;
        rep.failures.push_back(os.str());
      }
    }
  return rep;
}

} // namespace qk
