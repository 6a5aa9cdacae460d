#pragma once

#include "qk/koszul.hpp"

namespace qk {

struct character_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Transposed top differential: the coefficients c_T of diff_n(1 (x) top form),
// acting by left multiplication on Hom(L^{n-1}, A). The top Ext group is
// A / sum_T c_T A, free of rank one on the class of 1.
struct TopTranspose {
  // c_T indexed by the omitted position: entry k corresponds to the form
  // missing generator top[k], with the differential coefficient attached.
  std::vector<NCPoly> coefficients; // by omitted index position
  std::vector<Subset> sources;      // the (n-1)-forms, aligned with coefficients
};

TopTranspose top_transpose(const ChainComplex& c);

// Full transposed complex: for q = 1..n, matrix entries ^t d_q indexed by
// (target (q)-form, source (q-1)-form), acting by left multiplication.
using CochainEntries = std::map<std::pair<Subset, Subset>, NCPoly>;
CochainEntries transpose_entries(const ChainComplex& c, int q);

struct Character {
  std::map<int, Series> theta; // generator index -> value
  int degree = 0;              // homological degree (= number of generators)
  // reduction witnesses mu_i: chain over the (n-1)-forms per generator
  std::vector<Chain> witnesses;
  Series value(int i) const { return theta.at(i); }
};

// The character of the right action on the top Ext module, extracted by
// reducing 1 * e_i modulo the left multiples of the top-transpose
// coefficients (the cocycle representative is 1 (x) top form, a unit).
Character modular_character(const ChainComplex& c, int witness_degree_cap = 8);

// Reduce r modulo sum_T c_T A; returns the scalar remainder and appends the
// quotients into witness (aligned with TopTranspose.sources).
Series reduce_mod_image(const NCPoly& r, const TopTranspose& top, const Presentation& p,
                        Chain* witness, int degree_cap);

struct ThetaLink {
  Character f_side;   // over the coordinate presentation
  Character vee_side; // over the rescaled presentation
  bool holds = false; // theta_F(x_i) == h * theta_vee(e_i) for all i
  std::vector<int> failing_generators;
  bool alpha_in_i = true;
};

// Runs both resolutions from the coordinate presentation and compares the
// characters coefficientwise.
ThetaLink theta_link_check(const Presentation& f, int witness_degree_cap = 8);

} // namespace qk
