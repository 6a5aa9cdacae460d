#include "qk/json_io.hpp"

#include <fstream>

namespace qk {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
  return j;
}

Json series_to_json(const Series& s) {
  Json arr = Json::array();
  for (int k = 0; k <= s.trunc_order(); ++k) arr.push_back(rat_to_string(s.coeff(k)));
  return arr;
}

Series series_from_json(const Json& j, int order) {
  if (!j.is_array()) throw parse_error("series must be an array of rationals");
  Series s(order);
  for (size_t k = 0; k < j.size(); ++k) {
    Rat c = rat_from_string(j[k].get<std::string>());
    if (static_cast<int>(k) > order) {
      if (c != 0) throw parse_error("series coefficient above the truncation order");
      continue;
    }
    s.set_coeff(static_cast<int>(k), c);
  }
  return s;
}

Json poly_to_json(const NCPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    for (int k = 0; k <= c.trunc_order(); ++k) {
      if (c.coeff(k) == 0) continue;
      Json t;
      t["coeff"] = rat_to_string(c.coeff(k));
      t["h_pow"] = k;
      t["expo"] = e;
      terms.push_back(t);
    }
  }
  return terms;
}

NCPoly poly_from_json(const Json& j, int n, int order) {
  NCPoly p(n, order);
  for (const Json& t : j) {
    Rat c = rat_from_string(t.at("coeff").get<std::string>());
    int k = t.at("h_pow").get<int>();
    if (k < 0) throw parse_error("negative h power");
    if (k > order) throw parse_error("term above the truncation order");
    Expo e = t.at("expo").get<Expo>();
    if (static_cast<int>(e.size()) != n) throw parse_error("exponent arity mismatch");
    p.add_term(e, Series::monomial(c, k, order));
  }
  return p;
}

Json presentation_to_json(const Presentation& p) {
  Json j;
  j["name"] = p.name();
  j["trunc_order"] = p.trunc_order();
  j["generators"] = p.gen_names();
  Json rels = Json::array();
  for (int i = 0; i < p.gens(); ++i)
    for (int k = i + 1; k < p.gens(); ++k) {
      if (p.bracket(i, k).is_zero()) continue;
      Json r;
      r["i"] = i + 1;
      r["j"] = k + 1;
      r["terms"] = poly_to_json(p.bracket(i, k));
      rels.push_back(r);
    }
  j["relations"] = rels;
  return j;
}

Presentation presentation_from_json(const Json& j, int trunc_override) {
  int order = trunc_override >= 0 ? trunc_override
                                  : j.value("trunc_order", 6);
  std::vector<std::string> names;
  if (j.contains("generators")) names = j.at("generators").get<std::vector<std::string>>();
  int n = static_cast<int>(names.size());
  if (j.contains("n")) n = j.at("n").get<int>();
  if (n == 0 && !names.empty()) n = static_cast<int>(names.size());
  Presentation p(n, order, names, j.value("name", std::string{}));
  if (j.contains("relations"))
    for (const Json& r : j.at("relations")) {
      int i = r.at("i").get<int>() - 1;
      int k = r.at("j").get<int>() - 1;
      if (!(0 <= i && i < k && k < n))
        throw parse_error("relation indices must satisfy 1 <= i < j <= n");
      p.set_bracket(i, k, poly_from_json(r.at("terms"), n, order));
    }
  try {
    p.validate();
  } catch (const presentation_error& e) {
    throw parse_error(std::string("invalid presentation: ") + e.what());
  }
  return p;
}

Presentation load_presentation(const std::string& path, int trunc_override) {
  return presentation_from_json(load_json(path), trunc_override);
}

TwistData twist_from_json(const Json& j, int trunc_override) {
  TwistData t;
  t.base = presentation_from_json(j.at("base"), trunc_override);
  if (j.contains("r"))
    for (const Json& e : j.at("r")) {
      int sign = e.at("sign").get<int>();
      int a = e.at("i").get<int>() - 1;
      int b = e.at("j").get<int>() - 1;
      if (sign != 1 && sign != -1) throw parse_error("twist sign must be +-1");
      if (a < 0 || b < 0 || a >= t.base.gens() || b >= t.base.gens())
        throw parse_error("twist generator index out of range");
      t.r_exp.emplace_back(sign, a, b);
    }
  return t;
}

TwistData load_twist(const std::string& path, int trunc_override) {
  return twist_from_json(load_json(path), trunc_override);
}

ModulePresentation module_from_json(const Json& j, int gens, int order) {
  ModulePresentation m;
  m.rank = j.at("rank").get<int>();
  const Json& acts = j.at("actions");
  if (static_cast<int>(acts.size()) != gens)
    throw parse_error("module needs one action matrix per generator");
  for (const Json& a : acts) {
    SeriesMatrix mat(m.rank, m.rank, order);
    if (static_cast<int>(a.size()) != m.rank) throw parse_error("action matrix shape");
    for (int r = 0; r < m.rank; ++r) {
      if (static_cast<int>(a[r].size()) != m.rank) throw parse_error("action matrix shape");
      for (int c = 0; c < m.rank; ++c) mat.at(r, c) = series_from_json(a[r][c], order);
    }
    m.action.push_back(std::move(mat));
  }
  return m;
}

ModulePresentation load_module(const std::string& path, int gens, int order) {
  if (path == "trivial") return ModulePresentation::trivial(gens, order);
  return module_from_json(load_json(path), gens, order);
}

Json complex_to_json(const ChainComplex& c) {
  const int n = c.presentation().gens();
  Json j;
  j["presentation"] = presentation_to_json(c.presentation());
  Json diffs = Json::array();
  for (int q = 1; q <= n; ++q) {
    Json layer = Json::array();
    for (const Subset& s : subsets_of_size(n, q)) {
      Json entry;
      Subset s1 = s;
      for (int& v : s1) v += 1;
      entry["source"] = s1;
      Json targets = Json::array();
      for (const auto& [t, coeff] : c.diff(q, s)) {
        Json tt;
        Subset t1 = t;
        for (int& v : t1) v += 1;
        tt["subset"] = t1;
        tt["poly"] = poly_to_json(coeff);
        targets.push_back(tt);
      }
      entry["targets"] = targets;
      layer.push_back(entry);
    }
    diffs.push_back(layer);
  }
  j["diffs"] = diffs;
  return j;
}

ChainComplex complex_from_json(const Json& j) {
  Presentation p = presentation_from_json(j.at("presentation"));
  const int n = p.gens();
  const int order = p.trunc_order();
  ChainComplex c(p);
  const Json& diffs = j.at("diffs");
  for (int q = 1; q <= n; ++q) {
    for (const Json& entry : diffs.at(q - 1)) {
      Subset s = entry.at("source").get<Subset>();
      for (int& v : s) v -= 1;
      Chain chain;
      for (const Json& tt : entry.at("targets")) {
        Subset t = tt.at("subset").get<Subset>();
        for (int& v : t) v -= 1;
        chain.emplace(t, poly_from_json(tt.at("poly"), n, order));
      }
      c.set_diff(q, s, std::move(chain));
    }
  }
  return c;
}

} // namespace qk
