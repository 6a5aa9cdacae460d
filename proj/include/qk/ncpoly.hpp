#pragma once

#include "qk/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qk {

// Exponent vector of a PBW monomial e1^a1 ... en^an.
using Expo = std::vector<int>;
// Free word in the generators (0-based indices, arbitrary order).
using Word = std::vector<int>;

int expo_degree(const Expo& e);
int expo_top(const Expo& e); // largest index with positive exponent, -1 for 1

// Element of U_h in PBW normal form: exponent vector -> coefficient.
// Zero coefficients are never stored.
class NCPoly {
public:
  NCPoly() : n_(0), order_(0) {}
  NCPoly(int n, int order) : n_(n), order_(order) {}

  static NCPoly zero(int n, int order) { return NCPoly(n, order); }
  static NCPoly one(int n, int order) {
    return monomial(Expo(n, 0), Series::one(order), n, order);
  }
  static NCPoly gen(int i, int n, int order);
  static NCPoly monomial(const Expo& e, const Series& c, int n, int order);

  int gens() const { return n_; }
  int trunc_order() const { return order_; }
  const std::map<Expo, Series>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const; // max monomial degree, -1 when zero
  // minimal h-valuation over all coefficients; order+1 when zero
  int valuation() const;

  Series coeff(const Expo& e) const;
  void add_term(const Expo& e, const Series& c);

  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator-(const NCPoly& o) const;
  NCPoly operator-() const;
  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly scaled(const Series& c) const;
  NCPoly shifted(int k) const; // h^k * this, exactness rules as Series::shifted

  // Projection to the constant h-coefficient, as a polynomial over order 0.
  NCPoly h0() const;
  // Constant term as a series (the counit applied to a PBW element).
  Series constant_series() const;

  bool operator==(const NCPoly& o) const {
    return n_ == o.n_ && order_ == o.order_ && terms_ == o.terms_;
  }
  bool operator!=(const NCPoly& o) const { return !(*this == o); }

  std::string str(const std::vector<std::string>& names = {}) const;

private:
  int n_;
  int order_;
  std::map<Expo, Series> terms_;
};

// Generators, truncation order, and the full commutator right-hand sides
// g_ij = e_i e_j - e_j e_i for i < j. Load-time validation enforces:
//  - no constant terms in any g_ij;
//  - every monomial that is not a degree-1 h^0 term carries a factor of h;
//  - the degree-1 h^0 parts (structure constants) satisfy Jacobi.
class Presentation {
public:
  Presentation() : n_(0), order_(0) {}
  Presentation(int n, int order, std::vector<std::string> names, std::string name = "");

  // g for the pair i<j; throws on i>=j.
  void set_bracket(int i, int j, const NCPoly& g);
  const NCPoly& bracket(int i, int j) const;
  // Classical structure constant C^a_ij (degree-1 h^0 coefficient), any i != j.
  Rat classical(int i, int j, int a) const;

  int gens() const { return n_; }
  int trunc_order() const { return order_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& gen_names() const { return names_; }

  void validate() const; // throws presentation_error on violations
  bool is_abelian() const;
  // All brackets divisible by h (QFSH-side coordinate presentations).
  bool brackets_h_divisible() const;
  // Same generators, truncation 0, classical structure constants only.
  Presentation classical_limit() const;
  // Same data re-truncated at a new order (coefficients must fit exactly).
  Presentation with_order(int order) const;

private:
  int pair_index(int i, int j) const { return i * n_ + j; }

  int n_;
  int order_;
  std::string name_;
  std::vector<std::string> names_;
  std::vector<NCPoly> brackets_; // dense i<j table
};

struct presentation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct rewrite_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rule-application budget shared across one top-level rewriting call.
inline constexpr long kRewriteBudget = 10'000'000;

// PBW normal form of a free word (leftmost-innermost inversion rewriting).
NCPoly normal_form(const Word& w, const Presentation& p);

// Normal form of a * e_g.
NCPoly mul_gen(const NCPoly& a, int g, const Presentation& p);
// Normal form of a * X^e (letters appended in PBW order).
NCPoly mul_expo(const NCPoly& a, const Expo& e, const Presentation& p);
// Bilinear product of two normal forms.
NCPoly poly_mul(const NCPoly& a, const NCPoly& b, const Presentation& p);

// normal_form(e_i e_j) - normal_form(e_j e_i); equals bracket(i,j) for i<j.
NCPoly commutator(int i, int j, const Presentation& p);

struct ConfluenceReport {
  struct Discrepancy {
    int i, j, k;   // overlap word e_k e_j e_i, k > j > i
    NCPoly diff;   // difference of the two reductions
  };
  std::vector<Discrepancy> discrepancies;
  int triples_checked = 0;
  bool clean() const { return discrepancies.empty(); }
};

// Resolves every length-3 overlap e_k e_j e_i (k>j>i) along both rewrite
// orders at the ambient truncation order.
ConfluenceReport confluence_check(const Presentation& p, int degree_cap = 6);

// Replaces e_i by h^{k_i} e_i; negative shifts require exact divisibility.
NCPoly substitute_rescale(const NCPoly& a, const std::vector<int>& k_per_gen);

// Term-wise h-shift by per_deg * degree + extra (the substitution e_i -> h^{per_deg} e_i
// followed by a global h^extra, fused so no intermediate coefficient is truncated).
NCPoly rescale_shift(const NCPoly& a, int per_deg, int extra);

// Memoizing multiplier for repeated products against one presentation.
class MulCache {
public:
  explicit MulCache(const Presentation& p) : p_(&p) {}

  const Presentation& presentation() const { return *p_; }
  const NCPoly& mono_gen(const Expo& e, int g); // normal form of X^e * e_g
  NCPoly mul_gen(const NCPoly& a, int g);
  NCPoly mul_expo(const NCPoly& a, const Expo& e);
  NCPoly mul(const NCPoly& a, const NCPoly& b);

private:
  const Presentation* p_;
  long steps_ = 0;
  std::map<std::pair<Expo, int>, NCPoly> tab_;
};

} // namespace qk
