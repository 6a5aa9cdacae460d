#include "util.hpp"

#include "qk/dual.hpp"
#include "qk/koszul.hpp"

#include <doctest.h>

using namespace qk;

namespace {

Chain random_chain(std::mt19937& rng, int n, int q, int order) {
  Chain c;
  std::uniform_int_distribution<int> deg(0, 2), pick(0, 2), coeff(-3, 3), hp(0, 2);
  for (const Subset& s : subsets_of_size(n, q)) {
    if (pick(rng) != 0) continue;
    NCPoly u(n, order);
    for (int t = 0; t < 2; ++t) {
      Expo e(n, 0);
      for (int d = deg(rng); d > 0; --d) e[std::uniform_int_distribution<int>(0, n - 1)(rng)]++;
      u.add_term(e, Series::monomial(coeff(rng), hp(rng), order));
    }
    if (!u.is_zero()) c.emplace(s, u);
  }
  return c;
}

} // namespace

TEST_CASE("classical koszul examples") {
  // abelian: pure multiplication terms, square zero
  Presentation ab(3, 6, {}, "ab");
  ChainComplex k = classical_koszul(ab);
  Chain d12 = k.diff(2, {0, 1});
  CHECK(d12.at({1}) == NCPoly::gen(0, 3, 6));
  CHECK(d12.at({0}) == -NCPoly::gen(1, 3, 6));
  CHECK(d12.size() == 2);

  // sec7 classical limit: d2(1 (x) e2^e4) = e2 (x) e4 - e4 (x) e2 - 2 (x) e1
  Presentation cl = load_data("sec7-classical.json");
  ChainComplex k7 = classical_koszul(cl);
  Chain d24 = k7.diff(2, {1, 3});
  CHECK(d24.at({3}) == NCPoly::gen(1, 5, 6));
  CHECK(d24.at({1}) == -NCPoly::gen(3, 5, 6));
  CHECK(d24.at({0}) == mono("-2", 0, {0, 0, 0, 0, 0}, 5, 6));

  // heisenberg: d2(1 (x) e1^e2) contains -1 (x) e3
  ChainComplex kh = classical_koszul(load_data("heisenberg3.json").classical_limit());
  Chain dh = kh.diff(2, {0, 1});
  CHECK(dh.at({2}) == mono("-1", 0, {0, 0, 0}, 3, 0));
}

TEST_CASE("lift_preimage") {
  Presentation p = load_data("sec7.json");
  ChainComplex c = deform_koszul(p);

  // zero lifts to zero
  CHECK(lift_preimage(c, 2, Chain{}).empty());

  // round trip on random boundaries
  std::mt19937 rng(41);
  for (int q = 2; q <= 4; ++q)
    for (int t = 0; t < 4; ++t) {
      Chain x0 = random_chain(rng, 5, q, 6);
      Chain target = c.apply(q, x0);
      Chain x = lift_preimage(c, q, target);
      CHECK(chain_is_zero(chain_sub(c.apply(q, x), target)));
    }

  // non-cycles are rejected
  Chain bad{{Subset{0}, NCPoly::one(5, 6)}};
  CHECK_THROWS_AS(lift_preimage(c, 2, bad), koszul_error);
}

TEST_CASE("deform_koszul on the abelian presentation is classical") {
  Presentation ab(3, 6, {}, "ab");
  ChainComplex c = deform_koszul(ab);
  ChainComplex k = classical_koszul(ab);
  CHECK(c == k);
  CHECK(complex_check(c).clean());
}

TEST_CASE("deform_koszul on sec7") {
  Presentation p = load_data("sec7.json");
  ChainComplex c = deform_koszul(p);
  ComplexCheck chk = complex_check(c);
  CHECK(chk.boundary_squares_to_zero);
  CHECK(chk.graded_limit_matches_classical);

  // q = 2 correction follows the strip-top-generator reading: the (3,5)
  // differential picks up -(2/3) h^2 e1^2 (x) e1
  Chain d35 = c.diff(2, {2, 4});
  CHECK(d35.at({0}) == mono("-2/3", 2, {2, 0, 0, 0, 0}, 5, 6));

  // top differential is classical
  Subset top{0, 1, 2, 3, 4};
  ChainComplex cl = classical_koszul(p.classical_limit().with_order(6));
  CHECK(c.diff(5, top) == cl.diff(5, top));

  // determinism: rebuilt complexes agree entry for entry
  CHECK(deform_koszul(p) == c);
}

TEST_CASE("deform_koszul on scaled5") {
  Presentation p = load_data("scaled5.json");
  ChainComplex c = deform_koszul(p);
  CHECK(complex_check(c).clean());
  // d2(1 (x) e3^e5) = e3 (x) e5 - e5 (x) e3 - h (x) e3
  Chain d35 = c.diff(2, {2, 4});
  CHECK(d35.at({4}) == NCPoly::gen(2, 5, 6));
  CHECK(d35.at({2}) == -NCPoly::gen(4, 5, 6) - mono("1", 1, {0, 0, 0, 0, 0}, 5, 6));
}

TEST_CASE("complex_check flags corruption") {
  Presentation p = load_data("heisenberg3.json");
  ChainComplex c = deform_koszul(p);
  CHECK(complex_check(c).clean());
  Chain d = c.diff(2, {0, 1});
  d[{2}] = d.count(Subset{2}) ? d[{2}] + NCPoly::one(3, 6) : NCPoly::one(3, 6);
  c.set_diff(2, {0, 1}, d);
  ComplexCheck chk = complex_check(c);
  CHECK(!chk.clean());
}

TEST_CASE("qfsha resolution and its companion") {
  for (const char* name : {"abelian3.json", "sec7.json", "scaled5.json"}) {
    Presentation p = load_data(name);
    Presentation f = f_presentation(p);
    QfshaResult q = deform_koszul_qfsha(f);
    CHECK(q.alpha_in_i);
    CHECK(complex_check(q.f_complex).boundary_squares_to_zero);
    CHECK(complex_check(q.vee_complex).boundary_squares_to_zero);
    CHECK(complex_check(q.vee_complex).graded_limit_matches_classical);

    // h-conjugation: every f-side entry equals h * (rescaled companion entry)
    const int n = p.gens();
    for (int qe = 1; qe <= n; ++qe)
      for (const Subset& s : subsets_of_size(n, qe)) {
        const Chain& df = q.f_complex.diff(qe, s);
        const Chain& dv = q.vee_complex.diff(qe, s);
        CHECK(df.size() == dv.size());
        for (const auto& [t, entry] : dv)
          CHECK(df.at(t) == rescale_shift(entry, +1, +1));
      }

    // bracket terms of the f-side differential carry an explicit h
    for (int qe = 2; qe <= n; ++qe)
      for (const Subset& s : subsets_of_size(n, qe))
        for (const auto& [t, entry] : q.f_complex.diff(qe, s)) {
          NCPoly consts(n, p.trunc_order());
          for (const auto& [e, coeff] : entry.terms())
            if (expo_degree(e) == 0) consts.add_term(e, coeff);
          CHECK((consts.is_zero() || consts.valuation() >= 1));
        }
  }
}

TEST_CASE("qfsha vee complex computes the same character as the direct build") {
  for (const char* name : {"sec7.json", "scaled5.json"}) {
    Presentation p = load_data(name);
    QfshaResult q = deform_koszul_qfsha(f_presentation(p));
    ChainComplex direct = deform_koszul(vee_presentation(f_presentation(p)));
    // both are resolutions of the same algebra: the characters must agree
    CHECK(complex_check(direct).clean());
    // defect comparison runs through the character module (theta is
    // resolution-independent); tested in test_character.cpp
    CHECK(q.vee_complex.presentation().gens() == direct.presentation().gens());
  }
}

TEST_CASE("duality transport is multiplicative") {
  // T(x^b h^r) = h^{r+deg} x^b identifies the rescaled algebra inside the
  // coordinate one: T(u *_vee v) = T(u) *_f T(v)
  std::mt19937 rng(59);
  Presentation p = load_data("sec7.json");
  Presentation f = f_presentation(p);
  std::uniform_int_distribution<int> gen(0, 4), len(0, 3);
  for (int t = 0; t < 25; ++t) {
    Word wu, wv;
    for (int k = len(rng); k > 0; --k) wu.push_back(gen(rng));
    for (int k = len(rng); k > 0; --k) wv.push_back(gen(rng));
    NCPoly u = normal_form(wu, p), v = normal_form(wv, p);
    NCPoly lhs = rescale_shift(poly_mul(u, v, p), +1, 0);
    NCPoly rhs = poly_mul(rescale_shift(u, +1, 0), rescale_shift(v, +1, 0), f);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("complex serialization round trip") {
  Presentation p = load_data("scaled5.json");
  ChainComplex c = deform_koszul(p);
  Json j = complex_to_json(c);
  ChainComplex back = complex_from_json(j);
  CHECK(back == c);
}
