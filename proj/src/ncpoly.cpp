#include "qk/ncpoly.hpp"

#include <sstream>

namespace qk {

int expo_degree(const Expo& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

int expo_top(const Expo& e) {
  for (int i = static_cast<int>(e.size()) - 1; i >= 0; --i)
    if (e[i] > 0) return i;
  return -1;
}

NCPoly NCPoly::gen(int i, int n, int order) {
  Expo e(n, 0);
  e.at(i) = 1;
  return monomial(e, Series::one(order), n, order);
}

NCPoly NCPoly::monomial(const Expo& e, const Series& c, int n, int order) {
  NCPoly p(n, order);
  p.add_term(e, c);
  return p;
}

int NCPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, expo_degree(e));
  return d;
}

int NCPoly::valuation() const {
  int v = order_ + 1;
  for (const auto& [e, c] : terms_) v = std::min(v, c.valuation());
  return v;
}

Series NCPoly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Series::zero(order_) : it->second;
}

void NCPoly::add_term(const Expo& e, const Series& c) {
  if (static_cast<int>(e.size()) != n_) throw arith_error("exponent arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  NCPoly r = *this;
  r += o;
  return r;
}
NCPoly NCPoly::operator-(const NCPoly& o) const {
  NCPoly r = *this;
  r -= o;
  return r;
}
NCPoly NCPoly::operator-() const {
  NCPoly r(n_, order_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}
NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}
NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

NCPoly NCPoly::scaled(const Series& c) const {
  NCPoly r(n_, order_);
  if (c.is_zero()) return r;
  for (const auto& [e, x] : terms_) r.add_term(e, x * c);
  return r;
}

NCPoly NCPoly::shifted(int k) const {
  NCPoly r(n_, order_);
  for (const auto& [e, x] : terms_) r.add_term(e, x.shifted(k));
  return r;
}

NCPoly NCPoly::h0() const {
  NCPoly r(n_, 0);
  for (const auto& [e, c] : terms_) {
    if (c.constant() == 0) continue;
    r.add_term(e, Series::from_rat(c.constant(), 0));
  }
  return r;
}

Series NCPoly::constant_series() const {
  return coeff(Expo(n_, 0));
}

std::string NCPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << "  +  ";
    out << "(" << c.str() << ")";
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out << "*";
      if (i < names.size())
        out << names[i];
      else
        out << "e" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
    }
    first = false;
  }
  return out.str();
}

Presentation::Presentation(int n, int order, std::vector<std::string> names, std::string name)
    : n_(n), order_(order), name_(std::move(name)), names_(std::move(names)),
      brackets_(static_cast<size_t>(n) * n, NCPoly(n, order)) {
  if (n < 0) throw presentation_error("negative generator count");
  if (names_.empty())
    for (int i = 0; i < n; ++i) names_.push_back("e" + std::to_string(i + 1));
}

void Presentation::set_bracket(int i, int j, const NCPoly& g) {
  if (!(0 <= i && i < j && j < n_)) throw presentation_error("bracket index must have i < j");
  brackets_[pair_index(i, j)] = g;
}

const NCPoly& Presentation::bracket(int i, int j) const {
  if (!(0 <= i && i < j && j < n_)) throw presentation_error("bracket index must have i < j");
  return brackets_[pair_index(i, j)];
}

Rat Presentation::classical(int i, int j, int a) const {
  if (i == j) return 0;
  Expo e(n_, 0);
  e.at(a) = 1;
  if (i < j) return bracket(i, j).coeff(e).constant();
  return -bracket(j, i).coeff(e).constant();
}

void Presentation::validate() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const NCPoly& g = bracket(i, j);
      if (g.trunc_order() != order_ || g.gens() != n_)
        throw presentation_error("bracket with mismatched arity or truncation");
      for (const auto& [e, c] : g.terms()) {
        int d = expo_degree(e);
        if (d == 0) throw presentation_error("bracket has a constant term");
        if (d == 1 && c.constant() != 0) continue; // classical part
        if (c.constant() != 0)
          throw presentation_error(
              "bracket correction of degree != 1 must carry a factor of h");
      }
    }
  // Jacobi on the classical constants: [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej] = 0
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (int k = j + 1; k < n_; ++k)
        for (int b = 0; b < n_; ++b) {
          Rat acc = 0;
          for (int a = 0; a < n_; ++a) {
            acc += classical(i, j, a) * classical(a, k, b);
            acc += classical(j, k, a) * classical(a, i, b);
            acc += classical(k, i, a) * classical(a, j, b);
          }
          if (acc != 0)
            throw presentation_error("classical structure constants violate Jacobi");
        }
}

bool Presentation::is_abelian() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (!bracket(i, j).is_zero()) return false;
  return true;
}

bool Presentation::brackets_h_divisible() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (bracket(i, j).valuation() < 1 && !bracket(i, j).is_zero()) return false;
  return true;
}

Presentation Presentation::classical_limit() const {
  Presentation p(n_, 0, names_, name_.empty() ? "" : name_ + "-classical");
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      NCPoly g(n_, 0);
      for (const auto& [e, c] : bracket(i, j).terms())
        if (expo_degree(e) == 1 && c.constant() != 0)
          g.add_term(e, Series::from_rat(c.constant(), 0));
      p.set_bracket(i, j, g);
    }
  return p;
}

Presentation Presentation::with_order(int order) const {
  Presentation p(n_, order, names_, name_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      NCPoly g(n_, order);
      for (const auto& [e, c] : bracket(i, j).terms()) {
        Series s(order);
        for (int k = 0; k <= c.trunc_order(); ++k) {
          if (c.coeff(k) == 0) continue;
          if (k > order)
            throw presentation_error("re-truncation drops a nonzero coefficient");
          s.set_coeff(k, c.coeff(k));
        }
        g.add_term(e, s);
      }
      p.set_bracket(i, j, g);
    }
  return p;
}

namespace {

struct Budget {
  long left = kRewriteBudget;
  void tick() {
    if (--left < 0)
      throw rewrite_error("rewriting step budget exceeded "
                          "(presentation likely violates the h-factor invariant)");
  }
};

NCPoly mul_gen_b(const NCPoly& a, int g, const Presentation& p, Budget& budget);

NCPoly mul_expo_b(const NCPoly& a, const Expo& e, const Presentation& p, Budget& budget) {
  NCPoly r = a;
  for (size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) r = mul_gen_b(r, static_cast<int>(i), p, budget);
  return r;
}

NCPoly poly_mul_b(const NCPoly& a, const NCPoly& b, const Presentation& p, Budget& budget) {
  NCPoly r(a.gens(), a.trunc_order());
  for (const auto& [e, c] : b.terms()) r += mul_expo_b(a, e, p, budget).scaled(c);
  return r;
}

// normal form of X^e * e_g for a single PBW monomial
NCPoly mono_mul_gen(const Expo& e, int g, const Presentation& p, Budget& budget) {
  const int n = p.gens();
  const int N = p.trunc_order();
  int t = expo_top(e);
  if (t <= g) {
    Expo r = e;
    r[g] += 1;
    return NCPoly::monomial(r, Series::one(N), n, N);
  }
  budget.tick();
  // X^e e_g = X^{e - eps_t} (e_g e_t - g_{g,t})
  Expo head = e;
  head[t] -= 1;
  NCPoly first = mono_mul_gen(head, g, p, budget); // X^{e-eps_t} e_g
  first = mul_gen_b(first, t, p, budget);          // ... * e_t
  NCPoly corr =
      poly_mul_b(NCPoly::monomial(head, Series::one(N), n, N), p.bracket(g, t), p, budget);
  return first - corr;
}

NCPoly mul_gen_b(const NCPoly& a, int g, const Presentation& p, Budget& budget) {
  NCPoly r(a.gens(), a.trunc_order());
  for (const auto& [e, c] : a.terms()) {
    int t = expo_top(e);
    if (t <= g) {
      Expo x = e;
      x[g] += 1;
      r.add_term(x, c);
    } else {
      r += mono_mul_gen(e, g, p, budget).scaled(c);
    }
  }
  return r;
}

} // namespace

NCPoly mul_gen(const NCPoly& a, int g, const Presentation& p) {
  Budget budget;
  return mul_gen_b(a, g, p, budget);
}

NCPoly mul_expo(const NCPoly& a, const Expo& e, const Presentation& p) {
  Budget budget;
  return mul_expo_b(a, e, p, budget);
}

NCPoly poly_mul(const NCPoly& a, const NCPoly& b, const Presentation& p) {
  if (a.gens() != b.gens() || a.trunc_order() != b.trunc_order())
    throw arith_error("poly_mul operands disagree on arity or truncation");
  Budget budget;
  return poly_mul_b(a, b, p, budget);
}

NCPoly normal_form(const Word& w, const Presentation& p) {
  Budget budget;
  NCPoly r = NCPoly::one(p.gens(), p.trunc_order());
  for (int letter : w) {
    if (letter < 0 || letter >= p.gens()) throw rewrite_error("word letter out of range");
    r = mul_gen_b(r, letter, p, budget);
  }
  return r;
}

NCPoly commutator(int i, int j, const Presentation& p) {
  if (i == j) throw rewrite_error("commutator needs distinct generators");
  return normal_form({i, j}, p) - normal_form({j, i}, p);
}

ConfluenceReport confluence_check(const Presentation& p, int degree_cap) {
  (void)degree_cap;
  ConfluenceReport rep;
  const int n = p.gens();
  const int N = p.trunc_order();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        // word e_k e_j e_i; resolve the left overlap (k,j) first vs the right (j,i)
        NCPoly left = poly_mul(normal_form({k, j}, p), NCPoly::gen(i, n, N), p);
        NCPoly right = poly_mul(NCPoly::gen(k, n, N), normal_form({j, i}, p), p);
        NCPoly diff = left - right;
        rep.triples_checked += 1;
        if (!diff.is_zero()) rep.discrepancies.push_back({i, j, k, diff});
      }
  return rep;
}

NCPoly substitute_rescale(const NCPoly& a, const std::vector<int>& k_per_gen) {
  if (static_cast<int>(k_per_gen.size()) != a.gens())
    throw arith_error("rescale arity mismatch");
  NCPoly r(a.gens(), a.trunc_order());
  for (const auto& [e, c] : a.terms()) {
    long shift = 0;
    for (int i = 0; i < a.gens(); ++i) shift += static_cast<long>(e[i]) * k_per_gen[i];
    r.add_term(e, c.shifted(static_cast<int>(shift)));
  }
  return r;
}

NCPoly rescale_shift(const NCPoly& a, int per_deg, int extra) {
  NCPoly r(a.gens(), a.trunc_order());
  for (const auto& [e, c] : a.terms())
    r.add_term(e, c.shifted(per_deg * expo_degree(e) + extra));
  return r;
}

const NCPoly& MulCache::mono_gen(const Expo& e, int g) {
  auto key = std::make_pair(e, g);
  auto it = tab_.find(key);
  if (it != tab_.end()) return it->second;

  const int n = p_->gens();
  const int N = p_->trunc_order();
  NCPoly result(n, N);
  int t = expo_top(e);
  if (t <= g) {
    Expo x = e;
    x[g] += 1;
    result.add_term(x, Series::one(N));
  } else {
    if (++steps_ > kRewriteBudget)
      throw rewrite_error("rewriting step budget exceeded");
    Expo head = e;
    head[t] -= 1;
    NCPoly first = mono_gen(head, g); // copy: recursion may invalidate refs
    result = mul_gen(first, t);
    NCPoly headp = NCPoly::monomial(head, Series::one(N), n, N);
    for (const auto& [be, bc] : p_->bracket(g, t).terms())
      result -= mul_expo(headp, be).scaled(bc);
  }
  return tab_.emplace(std::move(key), std::move(result)).first->second;
}

NCPoly MulCache::mul_gen(const NCPoly& a, int g) {
  NCPoly r(a.gens(), a.trunc_order());
  for (const auto& [e, c] : a.terms()) {
    int t = expo_top(e);
    if (t <= g) {
      Expo x = e;
      x[g] += 1;
      r.add_term(x, c);
    } else {
      r += mono_gen(e, g).scaled(c);
    }
  }
  return r;
}

NCPoly MulCache::mul_expo(const NCPoly& a, const Expo& e) {
  NCPoly r = a;
  for (size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) r = mul_gen(r, static_cast<int>(i));
  return r;
}

NCPoly MulCache::mul(const NCPoly& a, const NCPoly& b) {
  NCPoly r(a.gens(), a.trunc_order());
  for (const auto& [e, c] : b.terms()) r += mul_expo(a, e).scaled(c);
  return r;
}

} // namespace qk
