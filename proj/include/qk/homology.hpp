#pragma once

#include "qk/character.hpp"
#include "qk/series_matrix.hpp"

namespace qk {

// Left module of finite K-rank given by generator action matrices.
struct ModulePresentation {
  int rank = 0;
  std::vector<SeriesMatrix> action; // one square matrix per generator

  static ModulePresentation trivial(int gens, int order);
  bool is_trivial() const;
};

struct module_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Substituted-relation check: g_ij(A) == [A_i, A_j] for every pair.
void check_module(const Presentation& p, const ModulePresentation& m);

// Evaluates a PBW element on the action matrices (ordered products).
SeriesMatrix evaluate_poly(const NCPoly& poly, const ModulePresentation& m);

// Isomorphism class of a finitely generated module over the power-series
// ring, read off a truncated computation with exact polynomial data.
struct DivisorProfile {
  int free_rank = 0;
  std::vector<int> torsion; // exponents k >= 1 of summands K/h^k, ascending
  bool operator==(const DivisorProfile& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  std::string str() const;
};

// Homology of  prev --d1--> mid --d2--> next  with matrices interpreted over
// the series ring (kernels are the divisor-free part of the Smith form).
DivisorProfile homology_at(const SeriesMatrix& d1, const SeriesMatrix& d2);

// Ext^i(K, M) for i = 0..n, from Hom(L^q, M) with entries acting through the
// module structure.
std::vector<DivisorProfile> ext_profiles(const ChainComplex& c, const ModulePresentation& m);

// Tor_j(Omega, K) for j = 0..n, from Omega (x) L^q with entries evaluated
// through the modular character.
std::vector<DivisorProfile> tor_profiles(const ChainComplex& c, const Character& theta);

struct PoincareReport {
  std::vector<DivisorProfile> ext;       // index i
  std::vector<DivisorProfile> tor;       // index j
  bool matches = false;                  // ext[i] == tor[n-i] for all i
  std::vector<int> failing_degrees;
};

// Degreewise comparison Ext^i(K, M) vs Tor_{n-i}(Omega, M). The Tor route
// needs the trivial module (counit); other modules are report-only on the
// Ext side.
PoincareReport poincare_check(const Presentation& p, const ModulePresentation& m);

// Finite exactness checks of the classical-limit transposed complex: the
// weight-filtered pieces W_s (coefficient degree - exterior degree <= s) are
// finite subcomplexes; off the top spot their cohomology must vanish.
struct ExtVanishingReport {
  bool clean = true;
  // (s, i, defect dimension) for every nonvanishing spot i != n
  std::vector<std::array<int, 3>> defects;
};

ExtVanishingReport ext_vanishing_check(const ChainComplex& c, int s_max = 1);

} // namespace qk
