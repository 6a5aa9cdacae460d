#include "qk/homology.hpp"

#include "qk/dual.hpp"

#include <sstream>

namespace qk {

ModulePresentation ModulePresentation::trivial(int gens, int order) {
  ModulePresentation m;
  m.rank = 1;
  m.action.assign(gens, SeriesMatrix(1, 1, order));
  return m;
}

bool ModulePresentation::is_trivial() const {
  if (rank != 1) return false;
  for (const auto& a : action)
    if (!a.at(0, 0).is_zero()) return false;
  return true;
}

SeriesMatrix evaluate_poly(const NCPoly& poly, const ModulePresentation& m) {
  const int r = m.rank;
  const int N = poly.trunc_order();
  SeriesMatrix acc(r, r, N);
  for (const auto& [e, c] : poly.terms()) {
    SeriesMatrix term = SeriesMatrix::identity(r, N);
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) term = term * m.action[i];
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) acc.at(a, b) += term.at(a, b) * c;
  }
  return acc;
}

void check_module(const Presentation& p, const ModulePresentation& m) {
  if (static_cast<int>(m.action.size()) != p.gens())
    throw module_error("module has the wrong number of action matrices");
  const int N = p.trunc_order();
  for (const auto& a : m.action)
    if (a.rows() != m.rank || a.cols() != m.rank || a.trunc_order() != N)
      throw module_error("module action matrix has wrong shape or truncation");
  for (int i = 0; i < p.gens(); ++i)
    for (int j = i + 1; j < p.gens(); ++j) {
      SeriesMatrix lhs = m.action[i] * m.action[j];
      SeriesMatrix rhs = m.action[j] * m.action[i];
      SeriesMatrix g = evaluate_poly(p.bracket(i, j), m);
      for (int a = 0; a < m.rank; ++a)
        for (int b = 0; b < m.rank; ++b)
          if (lhs.at(a, b) - rhs.at(a, b) != g.at(a, b))
            throw module_error("module action violates a presentation relation");
    }
}

std::string DivisorProfile::str() const {
  std::ostringstream os;
  os << "free^" << free_rank;
  for (int t : torsion) os << " + K/h^" << t;
  return os.str();
}

DivisorProfile homology_at(const SeriesMatrix& d1, const SeriesMatrix& d2) {
  // d2: mid -> next; kernel basis = divisor-free columns of the right transform
  SmithResult s2 = smith_normal_form(d2);
  const int mid = d2.cols();
  const int r2 = static_cast<int>(s2.divisors.size());
  const int ker_dim = mid - r2;

  // image of d1 in kernel coordinates
  SeriesMatrix y = s2.right_inv * d1;
  for (int i = 0; i < r2; ++i)
    for (int j = 0; j < d1.cols(); ++j)
      if (!y.at(i, j).is_zero())
        throw module_error("homology_at: image is not contained in the kernel "
                           "(data not exact at this truncation)");
  SeriesMatrix yk(ker_dim, d1.cols(), d1.trunc_order());
  for (int i = 0; i < ker_dim; ++i)
    for (int j = 0; j < d1.cols(); ++j) yk.at(i, j) = y.at(r2 + i, j);

  SmithResult sy = smith_normal_form(yk);
  DivisorProfile prof;
  prof.free_rank = ker_dim - static_cast<int>(sy.divisors.size());
  for (int k : sy.divisors)
    if (k >= 1) prof.torsion.push_back(k);
  std::sort(prof.torsion.begin(), prof.torsion.end());
  return prof;
}

namespace {

// ^t d_{q+1}: Hom(L^q, M) -> Hom(L^{q+1}, M); psi_S += c_{T,S} . psi_T.
SeriesMatrix ext_differential(const ChainComplex& c, const ModulePresentation& m, int q) {
  const int n = c.presentation().gens();
  const int N = c.presentation().trunc_order();
  std::vector<Subset> rows = subsets_of_size(n, q + 1);
  std::vector<Subset> cols = subsets_of_size(n, q);
  std::map<Subset, int> col_of;
  for (size_t j = 0; j < cols.size(); ++j) col_of[cols[j]] = static_cast<int>(j);

  SeriesMatrix d(static_cast<int>(rows.size()) * m.rank,
                 static_cast<int>(cols.size()) * m.rank, N);
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [t, coeff] : c.diff(q + 1, rows[i])) {
      SeriesMatrix a = evaluate_poly(coeff, m);
      int j = col_of.at(t);
      for (int x = 0; x < m.rank; ++x)
        for (int y = 0; y < m.rank; ++y)
          d.at(static_cast<int>(i) * m.rank + x, j * m.rank + y) += a.at(x, y);
    }
  return d;
}

// Omega (x) d_q: Lambda^q -> Lambda^{q-1}, entries through the character.
SeriesMatrix tor_differential(const ChainComplex& c, const Character& theta, int q) {
  const int n = c.presentation().gens();
  const int N = c.presentation().trunc_order();
  std::vector<Subset> cols = subsets_of_size(n, q);
  std::vector<Subset> rows = subsets_of_size(n, q - 1);
  std::map<Subset, int> row_of;
  for (size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);

  SeriesMatrix d(static_cast<int>(rows.size()), static_cast<int>(cols.size()), N);
  for (size_t j = 0; j < cols.size(); ++j)
    for (const auto& [t, coeff] : c.diff(q, cols[j])) {
      Series v(N);
      for (const auto& [e, s] : coeff.terms()) {
        Series mono = s;
        for (int g = 0; g < n; ++g)
          for (int k = 0; k < e[g]; ++k) mono *= theta.value(g);
        v += mono;
      }
      d.at(row_of.at(t), static_cast<int>(j)) += v;
    }
  return d;
}

} // namespace

std::vector<DivisorProfile> ext_profiles(const ChainComplex& c, const ModulePresentation& m) {
  const int n = c.presentation().gens();
  const int N = c.presentation().trunc_order();
  std::vector<SeriesMatrix> d; // d[q]: Hom(L^q) -> Hom(L^{q+1})
  for (int q = 0; q < n; ++q) d.push_back(ext_differential(c, m, q));

  auto count = [&](int q) {
    return static_cast<int>(subsets_of_size(n, q).size()) * m.rank;
  };
  std::vector<DivisorProfile> out;
  for (int i = 0; i <= n; ++i) {
    SeriesMatrix into = i == 0 ? SeriesMatrix(count(0), 0, N) : d[i - 1];
    SeriesMatrix from = i == n ? SeriesMatrix(0, count(n), N) : d[i];
    out.push_back(homology_at(into, from));
  }
  return out;
}

std::vector<DivisorProfile> tor_profiles(const ChainComplex& c, const Character& theta) {
  const int n = c.presentation().gens();
  const int N = c.presentation().trunc_order();
  std::vector<SeriesMatrix> d; // d[q-1]: Lambda^q -> Lambda^{q-1}
  for (int q = 1; q <= n; ++q) d.push_back(tor_differential(c, theta, q));

  auto count = [&](int q) { return static_cast<int>(subsets_of_size(n, q).size()); };
  std::vector<DivisorProfile> out;
  for (int j = 0; j <= n; ++j) {
    SeriesMatrix into = j == n ? SeriesMatrix(count(n), 0, N) : d[j];
    SeriesMatrix from = j == 0 ? SeriesMatrix(0, count(0), N) : d[j - 1];
    out.push_back(homology_at(into, from));
  }
  return out;
}

PoincareReport poincare_check(const Presentation& p, const ModulePresentation& m) {
  check_module(p, m);
  if (!m.is_trivial())
    throw module_error("poincare_check: the Tor route is implemented for the "
                       "trivial module only");
  ChainComplex complex = deform_koszul(p);
  Character theta = modular_character(complex);

  PoincareReport rep;
  rep.ext = ext_profiles(complex, m);
  rep.tor = tor_profiles(complex, theta);
  rep.matches = true;
  const int n = p.gens();
  for (int i = 0; i <= n; ++i)
    if (!(rep.ext[i] == rep.tor[n - i])) {
      rep.matches = false;
      rep.failing_degrees.push_back(i);
    }
  return rep;
}

namespace {

int rational_rank(std::vector<std::map<int, Rat>> rows) {
  std::map<int, int> pivots; // leading column -> index into echelon
  std::vector<std::map<int, Rat>> echelon;
  for (auto& row : rows) {
    while (!row.empty()) {
      auto pv = pivots.find(row.begin()->first);
      if (pv == pivots.end()) break;
      Rat f = row.begin()->second;
      for (const auto& [j, v] : echelon[pv->second]) {
        Rat& cell = row[j];
        cell -= f * v;
        cell.canonicalize();
        if (cell == 0) row.erase(j);
      }
    }
    if (row.empty()) continue;
    Rat inv = 1 / row.begin()->second;
    for (auto& [j, v] : row) {
      v *= inv;
      v.canonicalize();
    }
    pivots[row.begin()->first] = static_cast<int>(echelon.size());
    echelon.push_back(std::move(row));
  }
  return static_cast<int>(echelon.size());
}

} // namespace

ExtVanishingReport ext_vanishing_check(const ChainComplex& c, int s_max) {
  const int n = c.presentation().gens();
  ExtVanishingReport rep;
  if (n == 0) return rep;

  // classical entries, read off the complex mod h
  std::vector<std::map<std::pair<Subset, Subset>, NCPoly>> cl(n + 1);
  for (int q = 1; q <= n; ++q)
    for (const Subset& src : subsets_of_size(n, q))
      for (const auto& [t, coeff] : c.diff(q, src)) {
        NCPoly r = coeff.h0();
        if (!r.is_zero()) cl[q].emplace(std::make_pair(src, t), std::move(r));
      }

  for (int s = -n; s <= s_max; ++s) {
    // W_s basis at exterior degree q: (form, monomial) with deg <= s + q
    std::vector<std::vector<std::pair<Subset, Expo>>> basis(n + 1);
    std::vector<std::map<std::pair<Subset, Expo>, int>> index(n + 1);
    for (int q = 0; q <= n; ++q) {
      int cap = s + q;
      if (cap < 0) continue;
      for (const Subset& t : subsets_of_size(n, q))
        for (const Expo& e : multi_indices(n, cap)) {
          index[q][{t, e}] = static_cast<int>(basis[q].size());
          basis[q].push_back({t, e});
        }
    }
    std::vector<int> dims(n + 1, 0), ranks(n + 1, 0);
    for (int q = 0; q <= n; ++q) dims[q] = static_cast<int>(basis[q].size());

    for (int q = 0; q < n; ++q) {
      if (dims[q] == 0 || dims[q + 1] == 0) continue;
      std::vector<std::map<int, Rat>> cols(dims[q]);
      for (const auto& [key, coeff] : cl[q + 1]) {
        const auto& [src, t] = key;
        for (const auto& [ce, cc] : coeff.terms()) {
          for (int col = 0; col < dims[q]; ++col) {
            if (basis[q][col].first != t) continue;
            Expo target = basis[q][col].second;
            for (int g = 0; g < n; ++g) target[g] += ce[g];
            auto it = index[q + 1].find({src, target});
            if (it == index[q + 1].end()) continue;
            Rat& cell = cols[col][it->second];
            cell += cc.constant();
            if (cell == 0) cols[col].erase(it->second);
          }
        }
      }
      ranks[q] = rational_rank(std::move(cols));
    }

    for (int i = 0; i < n; ++i) {
      int into = i == 0 ? 0 : ranks[i - 1];
      int h = dims[i] - into - ranks[i];
      if (h != 0) {
        rep.clean = false;
        rep.defects.push_back({s, i, h});
      }
    }
  }
  return rep;
}

} // namespace qk
