#pragma once

#include "qk/series_matrix.hpp"
#include "qk/twist.hpp"

namespace qk {

struct degree_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All exponent vectors over n generators of degree <= max_deg, ordered by
// (degree, lex).
std::vector<Expo> multi_indices(int n, int max_deg);
Rat expo_factorial(const Expo& e);

// Values of the ordered functional products xi^alpha on PBW monomials X^beta,
// |alpha|, |beta| <= degree_cap. Triangular with unit diagonal modulo h.
// index_out receives the shared row/column index set.
SeriesMatrix pairing_matrix(const TwistContext& ctx, int degree_cap,
                            std::vector<Expo>* index_out = nullptr);

// The commutator functional xi_i xi_j - xi_j xi_i expressed in the xi basis.
// Throws degree_cap_error when the functional has support above the cap
// (checked up to degree_cap + 2).
NCPoly dual_product(int i, int j, const TwistContext& ctx, int degree_cap);

// Transpose of multiplication on U(g)[[h]] at the generator functional xi_i,
// expressed in the xi (x) xi basis.
Tensor2 dual_coproduct(int i, const TwistContext& ctx, int degree_cap);

// Quantum duality on presentations. vee: coordinates x_i with h-divisible
// commutators -> generators h^{-1} x_i (relation = rescaled / h^2); f_ is the
// left inverse (e_i = h^{-1} x_i read backwards).
Presentation vee_presentation(const Presentation& f);
Presentation f_presentation(const Presentation& p);

// End-to-end: dual products of all generator pairs, assembled as a coordinate
// presentation and pushed through vee. Generator names become e1..en.
Presentation twist_dual_presentation(const TwistContext& ctx, int degree_cap);

} // namespace qk
