#include "qk/hochschild.hpp"

#include "qk/dual.hpp"
#include "qk/series_matrix.hpp"

#include <set>

namespace qk {

namespace {

NCPoly lift_order(const NCPoly& a, int order) {
  NCPoly r(a.gens(), order);
  for (const auto& [e, c] : a.terms())
    r.add_term(e, Series::from_rat(c.constant(), order));
  return r;
}

} // namespace

NCPoly Cochain1::at(const Expo& e) const {
  if (expo_degree(e) > cap) throw hochschild_error("cochain input above the degree cap");
  auto it = val.find(e);
  return it == val.end() ? NCPoly(static_cast<int>(e.size()), 0) : it->second;
}

NCPoly Cochain1::apply(const NCPoly& x) const {
  NCPoly r(x.gens(), 0);
  for (const auto& [e, c] : x.terms()) r += at(e).scaled(c);
  return r;
}

NCPoly Cochain2::at(const Expo& u, const Expo& v, int n) const {
  if (expo_degree(u) + expo_degree(v) > cap)
    throw hochschild_error("cochain input above the degree cap");
  auto it = val.find({u, v});
  return it == val.end() ? NCPoly(n, 0) : it->second;
}

NCPoly Cochain2::apply(const NCPoly& u, const NCPoly& v) const {
  NCPoly r(u.gens(), 0);
  for (const auto& [eu, cu] : u.terms())
    for (const auto& [ev, cv] : v.terms()) r += at(eu, ev, u.gens()).scaled(cu * cv);
  return r;
}

bool Cochain2::is_zero() const {
  for (const auto& [k, v] : val)
    if (!v.is_zero()) return false;
  return true;
}

NCPoly CECochain::at(const Subset& s, int n) const {
  auto it = val.find(s);
  return it == val.end() ? NCPoly(n, 0) : it->second;
}

NCPoly CECochain::eval_wedge(int a, const Subset& rest, int n) const {
  auto [sign, wedge] = wedge_insert(a, rest);
  if (sign == 0) return NCPoly(n, 0);
  return at(wedge, n).scaled(Series::from_rat(sign, 0));
}

std::vector<Cochain2> mu_series(const Presentation& p, int r_max, int degree_cap) {
  if (r_max > p.trunc_order())
    throw hochschild_error("mu_series: r_max exceeds the truncation order");
  const int n = p.gens();
  const int N = p.trunc_order();
  Presentation p0 = p.classical_limit();
  MulCache deformed(p);
  MulCache classical(p0);

  std::vector<Cochain2> mus(r_max);
  for (auto& m : mus) m.cap = degree_cap;

  for (const Expo& u : multi_indices(n, degree_cap)) {
    int du = expo_degree(u);
    if (du == 0) continue;
    NCPoly mono_h = NCPoly::monomial(u, Series::one(N), n, N);
    NCPoly mono_0 = NCPoly::monomial(u, Series::one(0), n, 0);
    for (const Expo& v : multi_indices(n, degree_cap - du)) {
      if (expo_degree(v) == 0) continue;
      NCPoly star = deformed.mul_expo(mono_h, v);
      NCPoly cl = classical.mul_expo(mono_0, v);
      // star - classical, split by h-order
      NCPoly diff = star - lift_order(cl, N);
      for (int r = 1; r <= r_max; ++r) {
        NCPoly layer(n, 0);
        for (const auto& [e, c] : diff.terms())
          if (c.coeff(r) != 0) layer.add_term(e, Series::from_rat(c.coeff(r), 0));
        if (!layer.is_zero()) mus[r - 1].val.emplace(std::make_pair(u, v), layer);
      }
    }
  }
  return mus;
}

Cochain1 hochschild_b0(const NCPoly& c, const Presentation& p0, int cap) {
  const int n = p0.gens();
  MulCache cm(p0);
  Cochain1 out;
  out.cap = cap;
  for (const Expo& u : multi_indices(n, cap)) {
    NCPoly mono = NCPoly::monomial(u, Series::one(0), n, 0);
    NCPoly v = cm.mul(mono, c) - cm.mul(c, mono);
    if (!v.is_zero()) out.val.emplace(u, v);
  }
  return out;
}

Cochain2 hochschild_b1(const Cochain1& f, const Presentation& p0) {
  const int n = p0.gens();
  MulCache cm(p0);
  Cochain2 out;
  out.cap = f.cap;
  for (const Expo& u : multi_indices(n, f.cap)) {
    int du = expo_degree(u);
    if (du == 0) continue;
    NCPoly umono = NCPoly::monomial(u, Series::one(0), n, 0);
    for (const Expo& v : multi_indices(n, f.cap - du)) {
      if (expo_degree(v) == 0) continue;
      NCPoly vmono = NCPoly::monomial(v, Series::one(0), n, 0);
      NCPoly uv = cm.mul(umono, vmono);
      NCPoly value = cm.mul(umono, f.at(v)) - f.apply(uv) + cm.mul(f.at(u), vmono);
      if (!value.is_zero()) out.val.emplace(std::make_pair(u, v), value);
    }
  }
  return out;
}

Cochain3 hochschild_b2(const Cochain2& f, const Presentation& p0) {
  const int n = p0.gens();
  MulCache cm(p0);
  Cochain3 out;
  out.cap = f.cap;
  for (const Expo& u : multi_indices(n, f.cap)) {
    int du = expo_degree(u);
    if (du == 0) continue;
    NCPoly um = NCPoly::monomial(u, Series::one(0), n, 0);
    for (const Expo& v : multi_indices(n, f.cap - du)) {
      int dv = expo_degree(v);
      if (dv == 0) continue;
      NCPoly vm = NCPoly::monomial(v, Series::one(0), n, 0);
      for (const Expo& w : multi_indices(n, f.cap - du - dv)) {
        if (expo_degree(w) == 0) continue;
        NCPoly wm = NCPoly::monomial(w, Series::one(0), n, 0);
        NCPoly value = cm.mul(um, f.at(v, w, n)) - f.apply(cm.mul(um, vm), wm) +
                       f.apply(um, cm.mul(vm, wm)) - cm.mul(f.at(u, v, n), wm);
        if (!value.is_zero()) out.val.emplace(std::make_tuple(u, v, w), value);
      }
    }
  }
  return out;
}

CECochain ce_differential(const CECochain& f, const Presentation& p0) {
  const int n = p0.gens();
  MulCache cm(p0);
  CECochain out;
  out.q = f.q + 1;
  for (const Subset& s : subsets_of_size(n, f.q + 1)) {
    NCPoly acc(n, 0);
    for (size_t i = 0; i < s.size(); ++i) {
      Subset rest;
      for (size_t k = 0; k < s.size(); ++k)
        if (k != i) rest.push_back(s[k]);
      NCPoly fv = f.at(rest, n);
      NCPoly zm = NCPoly::gen(s[i], n, 0);
      NCPoly ad = cm.mul(zm, fv) - cm.mul(fv, zm);
      acc += (i % 2 ? -ad : ad);
    }
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j) {
        Subset rest;
        for (size_t k = 0; k < s.size(); ++k)
          if (k != i && k != j) rest.push_back(s[k]);
        for (int a = 0; a < n; ++a) {
          Rat cst = p0.classical(s[i], s[j], a);
          if (cst == 0) continue;
          NCPoly term = f.eval_wedge(a, rest, n).scaled(Series::from_rat(cst, 0));
          acc += ((i + j) % 2 == 0 ? -term : term); // (-1)^{(i+1)+(j+1)}
        }
      }
    if (!acc.is_zero()) out.val.emplace(s, acc);
  }
  return out;
}

CECochain antisymmetrize(const Cochain2& f, int n) {
  CECochain out;
  out.q = 2;
  for (const Subset& s : subsets_of_size(n, 2)) {
    Expo u(n, 0), v(n, 0);
    u[s[0]] = 1;
    v[s[1]] = 1;
    NCPoly value = f.at(u, v, n) - f.at(v, u, n);
    if (!value.is_zero()) out.val.emplace(s, value);
  }
  return out;
}

namespace {

// particular solution of a sparse rational system, free variables set to zero
struct SparseSolver {
  std::map<int, int> pivots;                 // column -> row
  std::vector<std::map<int, Rat>> rows;      // echelon rows
  std::vector<Rat> rhs;

  // returns false on inconsistency
  bool add_equation(std::map<int, Rat> row, Rat b) {
    while (!row.empty()) {
      auto pv = pivots.find(row.begin()->first);
      if (pv == pivots.end()) break;
      Rat f = row.begin()->second;
      for (const auto& [j, v] : rows[pv->second]) {
        Rat& cell = row[j];
        cell -= f * v;
        cell.canonicalize();
        if (cell == 0) row.erase(j);
      }
      b -= f * rhs[pv->second];
      b.canonicalize();
    }
    if (row.empty()) return b == 0;
    Rat inv = 1 / row.begin()->second;
    for (auto& [j, v] : row) {
      v *= inv;
      v.canonicalize();
    }
    b *= inv;
    b.canonicalize();
    pivots[row.begin()->first] = static_cast<int>(rows.size());
    rows.push_back(std::move(row));
    rhs.push_back(b);
    return true;
  }

  std::map<int, Rat> solve() const {
    std::map<int, Rat> x; // free variables absent (= 0)
    // back-substitute in reverse insertion order
    for (int r = static_cast<int>(rows.size()) - 1; r >= 0; --r) {
      const auto& row = rows[r];
      int lead = row.begin()->first;
      Rat v = rhs[r];
      for (auto it = std::next(row.begin()); it != row.end(); ++it) {
        auto xv = x.find(it->first);
        if (xv != x.end()) v -= it->second * xv->second;
      }
      v.canonicalize();
      if (v != 0) x[lead] = v;
    }
    return x;
  }
};

} // namespace

Cochain1 solve_coboundary(const Cochain2& mu1, const Presentation& p0, int degree_cap) {
  const int n = p0.gens();
  MulCache cm(p0);
  CECochain target = antisymmetrize(mu1, n);

  // value monomials: everything appearing in mu1 plus slack up to the cap
  int value_cap = 2;
  for (const auto& [k, v] : mu1.val) value_cap = std::max(value_cap, v.degree());
  std::vector<Expo> value_mons = multi_indices(n, value_cap);

  // unknowns f(e_k) = sum over value monomials; columns ordered (k, monomial)
  std::map<std::pair<int, Expo>, int> col_of;
  int ncols = 0;
  for (int k = 0; k < n; ++k)
    for (const Expo& w : value_mons) col_of[{k, w}] = ncols++;

  SparseSolver solver;
  // d(f)(e_i ^ e_j) = ad_i f(e_j) - ad_j f(e_i) - sum_a C^a_ij f(e_a) = target
  for (const Subset& s : subsets_of_size(n, 2)) {
    int i = s[0], j = s[1];
    // coefficient of each unknown on each value monomial
    std::map<Expo, std::map<int, Rat>> eq; // value monomial -> row
    auto accumulate = [&](int k, const Rat& scale, bool adjoint_by, int z) {
      // contribution scale * (ad_z X^w) or scale * X^w to column (k, w)
      for (const Expo& w : value_mons) {
        int col = col_of[{k, w}];
        NCPoly contrib(n, 0);
        NCPoly wm = NCPoly::monomial(w, Series::one(0), n, 0);
        if (adjoint_by) {
          NCPoly zm = NCPoly::gen(z, n, 0);
          contrib = cm.mul(zm, wm) - cm.mul(wm, zm);
        } else {
          contrib = wm;
        }
        for (const auto& [e, c] : contrib.terms()) {
          Rat& cell = eq[e][col];
          cell += scale * c.constant();
          cell.canonicalize();
          if (cell == 0) eq[e].erase(col);
        }
      }
    };
    accumulate(j, 1, true, i);  // + ad_i f(e_j)
    accumulate(i, -1, true, j); // - ad_j f(e_i)
    for (int a = 0; a < n; ++a) {
      Rat cst = p0.classical(i, j, a);
      if (cst != 0) accumulate(a, -cst, false, 0);
    }
    NCPoly t = target.at(s, n);
    std::map<Expo, Rat> rhs_map;
    for (const auto& [e, c] : t.terms()) rhs_map[e] = c.constant();
    std::set<Expo> all_mons;
    for (const auto& [e, row] : eq) all_mons.insert(e);
    for (const auto& [e, c] : rhs_map) all_mons.insert(e);
    for (const Expo& e : all_mons) {
      auto row_it = eq.find(e);
      auto rhs_it = rhs_map.find(e);
      if (!solver.add_equation(row_it == eq.end() ? std::map<int, Rat>{} : row_it->second,
                               rhs_it == rhs_map.end() ? Rat(0) : rhs_it->second))
        throw hochschild_error(
            "solve_coboundary: inconsistent system (mu1 is not a coboundary at this cap)");
    }
  }
  std::map<int, Rat> x = solver.solve();

  // assemble the generator values
  Cochain1 alpha;
  alpha.cap = degree_cap;
  std::vector<NCPoly> genval(n, NCPoly(n, 0));
  for (const auto& [key, col] : col_of) {
    auto xv = x.find(col);
    if (xv == x.end()) continue;
    genval[key.first].add_term(key.second, Series::from_rat(xv->second, 0));
  }
  for (int k = 0; k < n; ++k) {
    Expo g(n, 0);
    g[k] = 1;
    if (!genval[k].is_zero()) alpha.val.emplace(g, genval[k]);
  }

  // cocycle recursion: alpha(e_j X^g) = e_j alpha(X^g) + alpha(e_j) X^g - mu1(e_j, X^g)
  for (const Expo& e : multi_indices(n, degree_cap)) {
    int d = expo_degree(e);
    if (d <= 1) continue;
    int j = -1;
    for (int k = 0; k < n; ++k)
      if (e[k] > 0) {
        j = k;
        break;
      }
    Expo rest = e;
    rest[j] -= 1;
    Expo gj(n, 0);
    gj[j] = 1;
    NCPoly restm = NCPoly::monomial(rest, Series::one(0), n, 0);
    NCPoly value = cm.mul(NCPoly::gen(j, n, 0), alpha.at(rest)) +
                   cm.mul(alpha.at(gj), restm) - mu1.at(gj, rest, n);
    if (!value.is_zero()) alpha.val.emplace(e, value);
  }

  // exact verification on all pairs up to the cap
  Cochain2 check = hochschild_b1(alpha, p0);
  for (const Expo& u : multi_indices(n, degree_cap)) {
    int du = expo_degree(u);
    if (du == 0) continue;
    for (const Expo& v : multi_indices(n, degree_cap - du)) {
      if (expo_degree(v) == 0) continue;
      if (check.at(u, v, n) != mu1.at(u, v, n))
        throw hochschild_error("solve_coboundary: verification failed");
    }
  }
  return alpha;
}

NCPoly GaugeProduct::beta(const NCPoly& u) const {
  const int N = p->trunc_order();
  // beta = id - h alpha, extended K-linearly order by order
  NCPoly r = u;
  for (int k = 0; k < N; ++k) {
    NCPoly layer(u.gens(), 0);
    for (const auto& [e, c] : u.terms())
      if (c.coeff(k) != 0) layer.add_term(e, Series::from_rat(c.coeff(k), 0));
    if (layer.is_zero()) continue;
    r -= lift_order(alpha.apply(layer), N).shifted(k + 1);
  }
  return r;
}

NCPoly GaugeProduct::beta_inv(const NCPoly& u) const {
  const int N = p->trunc_order();
  // sum_k h^k alpha^k
  NCPoly r = u;
  NCPoly cur = u;
  for (int k = 1; k <= N; ++k) {
    // apply alpha K-linearly to cur, then multiply by h
    NCPoly next(u.gens(), N);
    for (int layer = 0; layer + k <= N; ++layer) {
      NCPoly slice(u.gens(), 0);
      for (const auto& [e, c] : cur.terms())
        if (c.coeff(layer) != 0) slice.add_term(e, Series::from_rat(c.coeff(layer), 0));
      if (slice.is_zero()) continue;
      next += lift_order(alpha.apply(slice), N).shifted(layer);
    }
    cur = next;
    if (cur.is_zero()) break;
    r += cur.shifted(k);
  }
  return r;
}

NCPoly GaugeProduct::mul(const NCPoly& u, const NCPoly& v) const {
  return beta_inv(poly_mul(beta(u), beta(v), *p));
}

GaugeTable gauge_transform(const Presentation& p, const Cochain1& alpha, int cap) {
  GaugeTable t;
  t.product.p = &p;
  t.product.alpha = alpha;
  t.product.cap = cap;
  const int n = p.gens();
  const int N = p.trunc_order();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      NCPoly ei = NCPoly::gen(i, n, N), ej = NCPoly::gen(j, n, N);
      t.commutators.emplace(std::make_pair(i, j),
                            t.product.mul(ei, ej) - t.product.mul(ej, ei));
    }
  return t;
}

CenterBasis center_basis(const ProductFn& prod, int n, int order, int degree_cap) {
  std::vector<Expo> mons = multi_indices(n, degree_cap);
  const int ncols = static_cast<int>(mons.size());

  // rows indexed by (generator, value monomial)
  std::map<std::pair<int, Expo>, int> row_of;
  std::vector<std::map<int, Series>> cols(ncols);
  int nrows = 0;
  for (int c = 0; c < ncols; ++c) {
    NCPoly zm = NCPoly::monomial(mons[c], Series::one(order), n, order);
    for (int g = 0; g < n; ++g) {
      NCPoly gm = NCPoly::gen(g, n, order);
      NCPoly comm = prod(zm, gm) - prod(gm, zm);
      for (const auto& [e, coeff] : comm.terms()) {
        auto key = std::make_pair(g, e);
        auto it = row_of.find(key);
        if (it == row_of.end()) it = row_of.emplace(key, nrows++).first;
        cols[c][it->second] = coeff;
      }
    }
  }
  SeriesMatrix m(nrows, ncols, order);
  for (int c = 0; c < ncols; ++c)
    for (const auto& [r, v] : cols[c]) m.at(r, c) = v;

  SmithResult s = smith_normal_form(m);
  const int rank = static_cast<int>(s.divisors.size());

  CenterBasis out;
  for (int j = rank; j < ncols; ++j) {
    NCPoly z(n, order);
    for (int c = 0; c < ncols; ++c)
      if (!s.right.at(c, j).is_zero()) z.add_term(mons[c], s.right.at(c, j));
    out.generators.push_back(std::move(z));
  }
  // mod-h reduced echelon of the generator span
  std::vector<NCPoly> reduced;
  for (const NCPoly& g : out.generators) {
    NCPoly r = g.h0();
    for (const NCPoly& e : reduced) {
      // eliminate by the leading (lex-greatest) monomial of e
      const Expo* lead = nullptr;
      for (const auto& [me, mc] : e.terms())
        if (!lead || *lead < me) lead = &me;
      if (!lead) continue;
      Series c = r.coeff(*lead);
      if (!c.is_zero()) r -= e.scaled(c);
    }
    if (r.is_zero()) continue;
    const Expo* lead = nullptr;
    for (const auto& [me, mc] : r.terms())
      if (!lead || *lead < me) lead = &me;
    r = r.scaled(r.coeff(*lead).inverse());
    reduced.push_back(r);
  }
  // back-eliminate for a canonical echelon
  for (size_t i = 0; i < reduced.size(); ++i)
    for (size_t j = 0; j < reduced.size(); ++j) {
      if (i == j) continue;
      const Expo* lead = nullptr;
      for (const auto& [me, mc] : reduced[j].terms())
        if (!lead || *lead < me) lead = &me;
      Series c = reduced[i].coeff(*lead);
      if (!c.is_zero() && lead) reduced[i] -= reduced[j].scaled(c);
    }
  std::sort(reduced.begin(), reduced.end(), [](const NCPoly& a, const NCPoly& b) {
    return a.terms() < b.terms();
  });
  out.profile = std::move(reduced);
  return out;
}

CenterBasis center_basis(const Presentation& p, int degree_cap) {
  return center_basis(
      [&p](const NCPoly& a, const NCPoly& b) { return poly_mul(a, b, p); }, p.gens(),
      p.trunc_order(), degree_cap);
}

} // namespace qk
