#pragma once

#include "qk/koszul.hpp"

#include <functional>

namespace qk {

struct hochschild_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cochains live over the classical algebra (truncation order 0); h enters
// only through the star-product expansion and the gauge series.

// Linear map U(a) -> U(a) given on PBW monomials up to a degree cap.
struct Cochain1 {
  int cap = 0;
  std::map<Expo, NCPoly> val;

  NCPoly at(const Expo& e) const;
  NCPoly apply(const NCPoly& x) const; // linear extension; rejects inputs above cap
};

// Bilinear map on PBW monomial pairs, |u| + |v| <= cap.
struct Cochain2 {
  int cap = 0;
  std::map<std::pair<Expo, Expo>, NCPoly> val;

  NCPoly at(const Expo& u, const Expo& v, int n) const;
  NCPoly apply(const NCPoly& u, const NCPoly& v) const;
  bool is_zero() const;
};

// Trilinear values on monomial triples (only produced by the coboundary).
struct Cochain3 {
  int cap = 0;
  std::map<std::tuple<Expo, Expo, Expo>, NCPoly> val;
};

// Alternating map Lambda^q(a) -> U(a) on basis forms.
struct CECochain {
  int q = 0;
  std::map<Subset, NCPoly> val;

  NCPoly at(const Subset& s, int n) const;
  // signed evaluation after sorting (e_a ^ rest)
  NCPoly eval_wedge(int a, const Subset& rest, int n) const;
  bool operator==(const CECochain& o) const { return q == o.q && val == o.val; }
};

// Star-product expansion u *_h v = uv + sum h^r mu_r(u, v) on monomial pairs
// with |u| + |v| <= degree_cap; returns mu_1 .. mu_{r_max}.
std::vector<Cochain2> mu_series(const Presentation& p, int r_max, int degree_cap);

// Hochschild coboundaries with classical products.
Cochain1 hochschild_b0(const NCPoly& c, const Presentation& p0, int cap);
Cochain2 hochschild_b1(const Cochain1& f, const Presentation& p0);
Cochain3 hochschild_b2(const Cochain2& f, const Presentation& p0);

// Chevalley-Eilenberg differential with the adjoint action, q <= n-1.
CECochain ce_differential(const CECochain& f, const Presentation& p0);

// Antisymmetrization of a 2-cochain.
CECochain antisymmetrize(const Cochain2& f, int n);

// Finds alpha with b(alpha) = mu1: solves the antisymmetrized problem at the
// Chevalley-Eilenberg level on generators (lex-normalized), extends by the
// cocycle recursion alpha(e_j X^g) = e_j alpha(X^g) + alpha(e_j) X^g
// - mu1(e_j, X^g), and verifies exactly on all pairs up to the cap.
Cochain1 solve_coboundary(const Cochain2& mu1, const Presentation& p0, int degree_cap);

// Deformed product transported through beta = id - h alpha.
struct GaugeProduct {
  const Presentation* p = nullptr; // the U_h presentation
  Cochain1 alpha;                  // classical values
  int cap = 0;

  NCPoly mul(const NCPoly& u, const NCPoly& v) const;
  NCPoly beta(const NCPoly& u) const;
  NCPoly beta_inv(const NCPoly& u) const;
};

struct GaugeTable {
  GaugeProduct product;
  // commutators e_i *' e_j - e_j *' e_i for i < j
  std::map<std::pair<int, int>, NCPoly> commutators;
};

GaugeTable gauge_transform(const Presentation& p, const Cochain1& alpha, int cap);

// Center of a product at a degree cap. generators: exact central elements of
// the truncated ring (divisor-free kernel columns); profile: their mod-h
// span in reduced echelon form, which excludes pure truncation torsion.
struct CenterBasis {
  std::vector<NCPoly> generators; // order N
  std::vector<NCPoly> profile;    // order 0, reduced echelon, sorted
};

using ProductFn = std::function<NCPoly(const NCPoly&, const NCPoly&)>;

CenterBasis center_basis(const ProductFn& prod, int n, int order, int degree_cap);

// Center of the presentation's own product.
CenterBasis center_basis(const Presentation& p, int degree_cap);

} // namespace qk
