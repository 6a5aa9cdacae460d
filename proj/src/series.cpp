#include "qk/series.hpp"

#include <sstream>

namespace qk {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw arith_error("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) throw arith_error("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

std::string Series::str() const {
  std::ostringstream out;
  bool first = true;
  for (int k = 0; k <= order_; ++k) {
    if (c_[k] == 0) continue;
    if (!first) out << " + ";
    out << c_[k].get_str();
    if (k == 1) out << "*h";
    if (k > 1) out << "*h^" << k;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

} // namespace qk
