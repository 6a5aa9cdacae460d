#pragma once

#include "qk/json_io.hpp"

#include <random>
#include <string>

inline std::string data_path(const std::string& name) {
  return std::string(QK_DATA_DIR) + "/" + name;
}

inline qk::Presentation load_data(const std::string& name, int trunc = -1) {
  return qk::load_presentation(data_path(name), trunc);
}

// c * h^k * X^expo
inline qk::NCPoly mono(const std::string& c, int k, const qk::Expo& e, int n, int order) {
  return qk::NCPoly::monomial(e, qk::Series::monomial(qk::rat_from_string(c), k, order), n,
                              order);
}

inline qk::Series ser(const std::string& c, int k, int order) {
  return qk::Series::monomial(qk::rat_from_string(c), k, order);
}

inline qk::Series rand_series(std::mt19937& rng, int order, bool unit = false) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 4);
  qk::Series s(order);
  for (int k = 0; k <= order; ++k) s.set_coeff(k, qk::Rat(num(rng), den(rng)));
  if (unit && s.constant() == 0) s.set_coeff(0, 1);
  return s;
}
