#include "oracles.hpp"

#include "qk/dual.hpp"
#include "qk/koszul.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

using qk::Expo;
using qk::Rat;

Brackets brackets_of(const qk::Presentation& p) {
  const int n = p.gens();
  Brackets c(n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) c[i][j][a] = p.classical(i, j, a);
  return c;
}

std::map<std::vector<int>, Rat> classical_normal_form(const std::vector<int>& word,
                                                      const Brackets& c) {
  const int n = static_cast<int>(c.size());
  std::map<std::vector<int>, Rat> work{{word, 1}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = work.begin(); it != work.end(); ++it) {
      const std::vector<int>& w = it->first;
      size_t pos = 0;
      bool found = false;
      for (size_t k = 0; k + 1 < w.size(); ++k)
        if (w[k] > w[k + 1]) {
          pos = k;
          found = true;
          break;
        }
      if (!found) continue;
      Rat coeff = it->second;
      int b = w[pos], a = w[pos + 1];
      std::vector<int> swapped = w;
      std::swap(swapped[pos], swapped[pos + 1]);
      std::vector<int> prefix(w.begin(), w.begin() + pos);
      std::vector<int> suffix(w.begin() + pos + 2, w.end());
      work.erase(it);
      work[swapped] += coeff;
      if (work[swapped] == 0) work.erase(swapped);
      for (int g = 0; g < n; ++g) {
        if (c[b][a][g] == 0) continue;
        std::vector<int> shorter = prefix;
        shorter.push_back(g);
        shorter.insert(shorter.end(), suffix.begin(), suffix.end());
        work[shorter] += coeff * c[b][a][g];
        if (work[shorter] == 0) work.erase(shorter);
      }
      changed = true;
      break;
    }
  }
  return work;
}

namespace {

// dense rational row reduction; returns rank, optionally solving A x = b
struct Dense {
  int rows = 0, cols = 0;
  std::vector<std::vector<Rat>> a;

  Dense(int r, int c) : rows(r), cols(c), a(r, std::vector<Rat>(c, 0)) {}
};

// is target in the column span? if yes and t_out, also report the coefficient
// of the distinguished last column when solving [cols | last] combinations
bool in_span(const Dense& m, const std::vector<Rat>& target) {
  std::vector<std::vector<Rat>> rowsv;
  // work with the transpose: rows = generators of the span
  for (int j = 0; j < m.cols; ++j) {
    std::vector<Rat> row(m.rows);
    for (int i = 0; i < m.rows; ++i) row[i] = m.a[i][j];
    rowsv.push_back(std::move(row));
  }
  // echelon
  std::vector<std::vector<Rat>> ech;
  std::vector<int> leads;
  for (auto& row : rowsv) {
    for (size_t e = 0; e < ech.size(); ++e) {
      if (row[leads[e]] == 0) continue;
      Rat f = row[leads[e]];
      for (int k = 0; k < m.rows; ++k) row[k] -= f * ech[e][k];
    }
    int lead = -1;
    for (int k = 0; k < m.rows; ++k)
      if (row[k] != 0) {
        lead = k;
        break;
      }
    if (lead < 0) continue;
    Rat inv = 1 / row[lead];
    for (int k = 0; k < m.rows; ++k) row[k] *= inv;
    ech.push_back(row);
    leads.push_back(lead);
  }
  std::vector<Rat> t = target;
  for (size_t e = 0; e < ech.size(); ++e) {
    if (t[leads[e]] == 0) continue;
    Rat f = t[leads[e]];
    for (int k = 0; k < m.rows; ++k) t[k] -= f * ech[e][k];
  }
  for (const Rat& v : t)
    if (v != 0) return false;
  return true;
}

} // namespace

std::vector<Rat> classical_theta(const qk::Presentation& classical, int cap) {
  const int n = classical.gens();
  Brackets c = brackets_of(classical);

  // monomials of degree <= cap and <= cap+1 (image side)
  std::vector<Expo> dom = qk::multi_indices(n, cap);
  std::vector<Expo> codom = qk::multi_indices(n, cap + 1);
  std::map<Expo, int> row_of;
  for (size_t i = 0; i < codom.size(); ++i) row_of[codom[i]] = static_cast<int>(i);

  // top-transpose coefficients c_T = (-1)^{k-1} e_{t_k} + constants, read off
  // the classical Koszul top differential
  qk::ChainComplex kz = qk::classical_koszul(classical);
  qk::Subset top(n);
  for (int i = 0; i < n; ++i) top[i] = i;
  const qk::Chain& d = kz.diff(n, top);

  // columns: for each omitted slot k and each domain monomial mu, the word
  // expansion of c_k * X^mu in the oracle normal form
  Dense m(static_cast<int>(codom.size()),
          static_cast<int>(d.size() * dom.size()));
  int col = 0;
  for (const auto& [t, coeff] : d) {
    for (const Expo& mu : dom) {
      for (const auto& [ce, cc] : coeff.terms()) {
        // word of X^ce followed by word of X^mu
        std::vector<int> word;
        for (int g = 0; g < n; ++g)
          for (int k = 0; k < ce[g]; ++k) word.push_back(g);
        for (int g = 0; g < n; ++g)
          for (int k = 0; k < mu[g]; ++k) word.push_back(g);
        for (const auto& [sorted, v] : classical_normal_form(word, c)) {
          Expo e(n, 0);
          for (int g : sorted) e[g] += 1;
          auto it = row_of.find(e);
          if (it == row_of.end())
            throw std::runtime_error("classical_theta: cap too small");
          m.a[it->second][col] += v * cc.constant();
        }
      }
      ++col;
    }
  }

  // theta(e_i) is the unique scalar with e_i - theta * 1 in the image
  std::vector<Rat> theta;
  for (int i = 0; i < n; ++i) {
    bool found = false;
    for (int num = -6; num <= 6 && !found; ++num) {
      std::vector<Rat> target(codom.size(), 0);
      Expo g(n, 0);
      g[i] = 1;
      target[row_of.at(g)] = 1;
      target[row_of.at(Expo(n, 0))] = -Rat(num);
      if (in_span(m, target)) {
        theta.push_back(num);
        found = true;
      }
    }
    if (!found) throw std::runtime_error("classical_theta: no scalar in [-6,6] works");
  }
  return theta;
}

} // namespace oracle
