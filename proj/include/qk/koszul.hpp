#pragma once

#include "qk/ncpoly.hpp"

#include <map>

namespace qk {

// Strictly increasing tuple of generator indices: basis element of Lambda^q.
using Subset = std::vector<int>;
// Element of U_h (x) Lambda^q: basis form -> left coefficient.
using Chain = std::map<Subset, NCPoly>;

std::vector<Subset> subsets_of_size(int n, int q);
// e_a ^ e_S -> (sign, sorted subset); sign 0 when a is already in S.
std::pair<int, Subset> wedge_insert(int a, const Subset& s);

struct koszul_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Free resolution data: diff(q) maps basis forms of Lambda^q to chains in
// U_h (x) Lambda^{q-1}, for q = 1..n; the q = 0 differential is the counit.
class ChainComplex {
public:
  ChainComplex() = default;
  ChainComplex(Presentation p) : p_(std::move(p)), diffs_(p_.gens() + 1) {}

  const Presentation& presentation() const { return p_; }
  int length() const { return p_.gens(); }

  void set_diff(int q, const Subset& s, Chain value);
  const Chain& diff(int q, const Subset& s) const;

  // Applies diff q to a chain (left-module extension).
  Chain apply(int q, const Chain& x) const;
  Chain apply(int q, const Chain& x, MulCache& cache) const;
  // Counit of a Lambda^0 chain.
  Series apply_counit(const Chain& x) const;

  bool operator==(const ChainComplex& o) const;

private:
  Presentation p_;
  std::vector<std::map<Subset, Chain>> diffs_;
};

bool chain_is_zero(const Chain& x);
Chain chain_add(const Chain& a, const Chain& b);
Chain chain_sub(const Chain& a, const Chain& b);
Chain chain_scaled(const Chain& a, const Series& c);
Chain chain_shifted(const Chain& a, int k);
int chain_valuation(const Chain& a, int order);

// The two-sum differential built from the classical structure constants.
ChainComplex classical_koszul(const Presentation& p);

// Solves diff_q(x) = target (target must be a cycle in degree q-1), order by
// order in h, by the symbol-level symmetric-algebra contracting homotopy.
Chain lift_preimage(const ChainComplex& c, int q, const Chain& target,
                    int degree_cap = 64);

// Deformed Koszul resolution: classical leading part plus corrections found
// by lifting the h-divisible defect.
ChainComplex deform_koszul(const Presentation& p);

struct QfshaResult {
  ChainComplex f_complex;    // over the coordinate presentation
  ChainComplex vee_complex;  // companion over vee_presentation(f)
  bool alpha_in_i = true;    // corrections have h-divisible counit
  std::vector<std::string> alpha_violations;
};

// Coordinate-side resolution with explicit h on the bracket terms and
// corrections constrained to I = eps^{-1}(h K), plus the companion complex
// obtained by generator rescaling. Checks the h-conjugation identity.
QfshaResult deform_koszul_qfsha(const Presentation& f);

struct ComplexCheck {
  bool boundary_squares_to_zero = true;
  bool graded_limit_matches_classical = true;
  std::vector<std::string> failures;
  bool clean() const { return boundary_squares_to_zero && graded_limit_matches_classical; }
};

ComplexCheck complex_check(const ChainComplex& c);

} // namespace qk
