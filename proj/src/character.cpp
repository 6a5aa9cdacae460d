#include "qk/character.hpp"

#include "qk/dual.hpp"

namespace qk {

TopTranspose top_transpose(const ChainComplex& c) {
  const Presentation& p = c.presentation();
  const int n = p.gens();
  TopTranspose t;
  if (n == 0) return t;
  Subset top(n);
  for (int i = 0; i < n; ++i) top[i] = i;
  const Chain& d = c.diff(n, top);
  for (int k = 0; k < n; ++k) {
    Subset rest;
    for (int i = 0; i < n; ++i)
      if (i != k) rest.push_back(i);
    t.sources.push_back(rest);
    auto it = d.find(rest);
    t.coefficients.push_back(it == d.end() ? NCPoly(n, p.trunc_order()) : it->second);
  }
  return t;
}

CochainEntries transpose_entries(const ChainComplex& c, int q) {
  CochainEntries out;
  const int n = c.presentation().gens();
  for (const Subset& s : subsets_of_size(n, q))
    for (const auto& [t, coeff] : c.diff(q, s))
      if (!coeff.is_zero()) out.emplace(std::make_pair(s, t), coeff);
  return out;
}

Series reduce_mod_image(const NCPoly& r, const TopTranspose& top, const Presentation& p,
                        Chain* witness, int degree_cap) {
  const int n = p.gens();
  const int N = p.trunc_order();
  MulCache cache(p);

  // leading coefficient of c_T on its generator: c_T = sign * e_{omitted} + rest
  std::vector<Series> lead_units(n, Series::zero(N));
  for (int k = 0; k < n; ++k) {
    Expo g(n, 0);
    g.at(k) = 1;
    lead_units[k] = top.coefficients[k].coeff(g);
    if (!lead_units[k].is_unit())
      throw character_error("top transpose has no unit leading coefficient "
                            "(hypotheses of the rank-one Ext theorem fail)");
  }

  NCPoly rem = r;
  long guard = 200000;
  while (true) {
    // lex-greatest non-constant monomial
    const Expo* pick = nullptr;
    for (const auto& [e, coeff] : rem.terms())
      if (expo_degree(e) > 0 && (!pick || *pick < e)) pick = &e;
    if (!pick) break;
    if (--guard < 0) throw character_error("reduction failed to terminate");
    Expo e = *pick;
    if (expo_degree(e) > degree_cap)
      throw character_error("reduction exceeded the witness degree cap");
    int j = expo_top(e);
    Expo head = e;
    head[j] -= 1;
    NCPoly headp = NCPoly::monomial(head, Series::one(N), n, N);
    NCPoly image = cache.mul(top.coefficients[j], headp);
    // the X^e coefficient of image is lead_unit * (1 + h ...), a unit
    Series unit = image.coeff(e);
    if (!unit.is_unit())
      throw character_error("reduction pivot is not a unit");
    Series factor = rem.coeff(e) * unit.inverse();
    rem -= image.scaled(factor);
    if (witness) {
      NCPoly q = headp.scaled(factor);
      auto [it, inserted] = witness->emplace(top.sources[j], q);
      if (!inserted) it->second += q;
    }
  }
  return rem.constant_series();
}

Character modular_character(const ChainComplex& c, int witness_degree_cap) {
  const Presentation& p = c.presentation();
  const int n = p.gens();
  Character ch;
  ch.degree = n;
  if (n == 0) return ch;
  TopTranspose top = top_transpose(c);
  for (int i = 0; i < n; ++i) {
    Chain witness;
    Series v = reduce_mod_image(NCPoly::gen(i, n, p.trunc_order()), top, p, &witness,
                                witness_degree_cap);
    ch.theta.emplace(i, v);
    ch.witnesses.push_back(std::move(witness));
  }
  return ch;
}

ThetaLink theta_link_check(const Presentation& f, int witness_degree_cap) {
  ThetaLink link;
  QfshaResult q = deform_koszul_qfsha(f);
  link.alpha_in_i = q.alpha_in_i;
  link.f_side = modular_character(q.f_complex, witness_degree_cap);
  link.vee_side = modular_character(deform_koszul(vee_presentation(f)), witness_degree_cap);
  link.holds = true;
  for (int i = 0; i < f.gens(); ++i) {
    Series lhs = link.f_side.value(i);
    Series rhs = link.vee_side.value(i).shifted(1);
    if (lhs != rhs) {
      link.holds = false;
      link.failing_generators.push_back(i);
    }
  }
  return link;
}

} // namespace qk
