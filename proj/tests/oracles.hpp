#pragma once

// Independent oracles used to freeze expected values. These deliberately
// avoid the library's rewriting path: the PBW normalizer works on explicit
// word lists with adjacent-transposition rewriting, and the character oracle
// is dense rational linear algebra on a degree-capped quotient.

#include "qk/ncpoly.hpp"

#include <map>
#include <vector>

namespace oracle {

// Classical structure constants c[i][j][a] with c[i][j] = -c[j][i].
using Brackets = std::vector<std::vector<std::vector<qk::Rat>>>;

Brackets brackets_of(const qk::Presentation& p);

// Classical PBW normal form of a word by adjacent-inversion elimination on
// word lists (no h, exact rationals): sorted word -> coefficient.
std::map<std::vector<int>, qk::Rat> classical_normal_form(const std::vector<int>& word,
                                                          const Brackets& c);

// Character of the right action on the top Ext group of the classical Koszul
// complex, by dense linear algebra on monomials of degree <= cap.
// Returns one rational per generator.
std::vector<qk::Rat> classical_theta(const qk::Presentation& classical, int cap);

} // namespace oracle
