#include "qk/commands.hpp"

#include "qk/dual.hpp"
#include "qk/hochschild.hpp"

#include <fstream>

namespace qk {

namespace {

Json chain_to_json(const Chain& ch) {
  Json out = Json::array();
  for (const auto& [t, u] : ch) {
    Json e;
    Subset t1 = t;
    for (int& v : t1) v += 1;
    e["subset"] = t1;
    e["poly"] = poly_to_json(u);
    out.push_back(e);
  }
  return out;
}

Json tensor_to_json(const Tensor2& t) {
  Json out = Json::array();
  for (const auto& [k, c] : t.terms()) {
    Json e;
    e["left"] = k.first;
    e["right"] = k.second;
    e["coeff"] = series_to_json(c);
    out.push_back(e);
  }
  return out;
}

std::string pair_key(int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

int cmd_confluence(const JobConfig& cfg, Json& rep) {
  Presentation p = load_presentation(cfg.inputs.at(0), cfg.trunc);
  ConfluenceReport r = confluence_check(p, cfg.degree);
  rep["triples_checked"] = r.triples_checked;
  rep["clean"] = r.clean();
  Json d = Json::array();
  for (const auto& disc : r.discrepancies) {
    Json e;
    e["triple"] = {disc.i + 1, disc.j + 1, disc.k + 1};
    e["difference"] = poly_to_json(disc.diff);
    d.push_back(e);
  }
  rep["discrepancies"] = d;
  return r.clean() ? 0 : 1;
}

int cmd_koszul(const JobConfig& cfg, Json& rep) {
  Presentation p = load_presentation(cfg.inputs.at(0), cfg.trunc);
  ChainComplex c = deform_koszul(p);
  ComplexCheck chk = complex_check(c);
  rep["complex"] = complex_to_json(c);
  rep["boundary_squares_to_zero"] = chk.boundary_squares_to_zero;
  rep["graded_limit_matches_classical"] = chk.graded_limit_matches_classical;
  rep["failures"] = chk.failures;
  return chk.clean() ? 0 : 1;
}

int cmd_theta(const JobConfig& cfg, Json& rep) {
  Presentation p = load_presentation(cfg.inputs.at(0), cfg.trunc);
  ChainComplex c = deform_koszul(p);
  Character ch = modular_character(c, cfg.witness_degree);
  Json theta;
  for (int i = 0; i < p.gens(); ++i)
    theta[p.gen_names()[i]] = series_to_json(ch.value(i));
  rep["theta"] = theta;
  rep["degree"] = ch.degree;
  Json wit;
  for (int i = 0; i < p.gens(); ++i)
    wit[p.gen_names()[i]] = chain_to_json(ch.witnesses[i]);
  rep["witnesses"] = wit;
  return 0;
}

int cmd_vee(const JobConfig& cfg, Json& rep) {
  Presentation f = load_presentation(cfg.inputs.at(0), cfg.trunc);
  Presentation p = vee_presentation(f);
  rep["presentation"] = presentation_to_json(p);
  return 0;
}

int cmd_link(const JobConfig& cfg, Json& rep) {
  Presentation f = load_presentation(cfg.inputs.at(0), cfg.trunc);
  ThetaLink link = theta_link_check(f, cfg.witness_degree);
  Json tf, tv;
  for (int i = 0; i < f.gens(); ++i) {
    tf[f.gen_names()[i]] = series_to_json(link.f_side.value(i));
    tv[f.gen_names()[i]] = series_to_json(link.vee_side.value(i));
  }
  rep["theta_f"] = tf;
  rep["theta_vee"] = tv;
  rep["holds"] = link.holds;
  rep["alpha_in_i"] = link.alpha_in_i;
  return link.holds ? 0 : 1;
}

int cmd_twist_dual(const JobConfig& cfg, Json& rep) {
  TwistData data = load_twist(cfg.inputs.at(0), cfg.trunc);
  data.base.validate();
  TwistContext ctx(std::move(data));
  const int n = ctx.gens();

  Json products;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      products[pair_key(i, j)] = poly_to_json(dual_product(i, j, ctx, cfg.degree));
  rep["dual_products"] = products;

  Json coproducts;
  for (int i = 0; i < n; ++i)
    coproducts["xi" + std::to_string(i + 1)] =
        tensor_to_json(dual_coproduct(i, ctx, cfg.degree));
  rep["dual_coproducts"] = coproducts;

  rep["presentation"] = presentation_to_json(twist_dual_presentation(ctx, cfg.degree));
  return 0;
}

int cmd_hochschild(const JobConfig& cfg, Json& rep) {
  Presentation p = load_presentation(cfg.inputs.at(0), cfg.trunc);
  Presentation p0 = p.classical_limit();
  const int n = p.gens();
  const int mu_cap = std::min(cfg.degree, 4);
  std::vector<Cochain2> mus = mu_series(p, std::min(2, p.trunc_order()), mu_cap);
  const Cochain2& mu1 = mus.at(0);

  Json mu_table;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Expo u(n, 0), v(n, 0);
      u[i] = 1;
      v[j] = 1;
      NCPoly val = mu1.at(u, v, n);
      if (!val.is_zero())
        mu_table["mu1" + pair_key(i, j)] = poly_to_json(val);
    }
  rep["mu1"] = mu_table;

  Cochain1 alpha = solve_coboundary(mu1, p0, mu_cap);
  Json alpha_json;
  for (int i = 0; i < n; ++i) {
    Expo g(n, 0);
    g[i] = 1;
    NCPoly val = alpha.at(g);
    if (!val.is_zero()) alpha_json[p.gen_names()[i]] = poly_to_json(val);
  }
  rep["alpha_on_generators"] = alpha_json;

  // Psi*(mu1) = d(alpha restricted to generators)
  CECochain psi = antisymmetrize(mu1, n);
  CECochain seed;
  seed.q = 1;
  for (int i = 0; i < n; ++i) {
    Expo g(n, 0);
    g[i] = 1;
    NCPoly val = alpha.at(g);
    if (!val.is_zero()) seed.val.emplace(Subset{i}, val);
  }
  bool identity = ce_differential(seed, p0) == psi;
  rep["psi_mu1_is_d_of_seed"] = identity;

  GaugeTable gauge = gauge_transform(p, alpha, cfg.degree);
  Json comms;
  bool h1_killed = true;
  for (const auto& [key, val] : gauge.commutators) {
    comms[pair_key(key.first, key.second)] = poly_to_json(val);
    for (const auto& [e, c] : val.terms())
      if (c.coeff(1) != 0) h1_killed = false;
  }
  rep["gauge_commutators"] = comms;
  rep["gauge_kills_h1"] = h1_killed;
  return identity && h1_killed ? 0 : 1;
}

int cmd_center(const JobConfig& cfg, Json& rep) {
  Presentation p = load_presentation(cfg.inputs.at(0), cfg.trunc);
  CenterBasis cb = center_basis(p, cfg.degree);
  Json profile = Json::array();
  for (const NCPoly& z : cb.profile) profile.push_back(poly_to_json(z));
  rep["degree_cap"] = cfg.degree;
  rep["profile"] = profile;
  rep["profile_rank"] = cb.profile.size();
  return 0;
}

int cmd_poincare(const JobConfig& cfg, Json& rep) {
  Presentation p = load_presentation(cfg.inputs.at(0), cfg.trunc);
  ModulePresentation m = load_module(cfg.inputs.at(1), p.gens(), p.trunc_order());
  PoincareReport r = poincare_check(p, m);
  Json ext = Json::array(), tor = Json::array();
  for (const auto& prof : r.ext) ext.push_back(prof.str());
  for (const auto& prof : r.tor) tor.push_back(prof.str());
  rep["ext"] = ext;
  rep["tor"] = tor;
  rep["matches"] = r.matches;
  rep["failing_degrees"] = r.failing_degrees;
  return r.matches ? 0 : 1;
}

void print_text(const Json& rep, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  for (const auto& [key, value] : rep.items()) {
    if (value.is_object()) {
      os << pad << key << ":\n";
      print_text(value, os, indent + 2);
    } else {
      os << pad << key << ": " << value.dump() << "\n";
    }
  }
}

} // namespace

int run_command_impl(const JobConfig& cfg, Json& rep) {
  rep["schema"] = 1;
  rep["command"] = cfg.command;
  if (cfg.command == "confluence") return cmd_confluence(cfg, rep);
  if (cfg.command == "koszul") return cmd_koszul(cfg, rep);
  if (cfg.command == "theta") return cmd_theta(cfg, rep);
  if (cfg.command == "vee") return cmd_vee(cfg, rep);
  if (cfg.command == "link") return cmd_link(cfg, rep);
  if (cfg.command == "twist-dual") return cmd_twist_dual(cfg, rep);
  if (cfg.command == "hochschild") return cmd_hochschild(cfg, rep);
  if (cfg.command == "center") return cmd_center(cfg, rep);
  if (cfg.command == "poincare") return cmd_poincare(cfg, rep);
  throw parse_error("unknown command: " + cfg.command);
}

int run_command(const JobConfig& cfg, std::ostream& err) {
  Json rep;
  int status;
  try {
    status = run_command_impl(cfg, rep);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    os = &file;
  }
  if (cfg.format == "json")
    *os << rep.dump(2) << "\n";
  else
    print_text(rep, *os);
  return status;
}

} // namespace qk
