#include "util.hpp"

#include "qk/series_matrix.hpp"

#include <doctest.h>

using namespace qk;

TEST_CASE("series arithmetic at small truncation") {
  // (1 + h)(1 - h) at N=1 -> 1
  Series a = Series::one(1) + Series::h(1);
  Series b = Series::one(1) - Series::h(1);
  CHECK(a * b == Series::one(1));

  // same product at N=2 -> 1 - h^2
  Series a2 = Series::one(2) + Series::h(2);
  Series b2 = Series::one(2) - Series::h(2);
  CHECK(a2 * b2 == Series::one(2) - Series::monomial(1, 2, 2));

  // (2/3)h * 3h at N=3 -> 2h^2
  CHECK(ser("2/3", 1, 3) * ser("3", 1, 3) == ser("2", 2, 3));

  CHECK_THROWS_AS(Series::one(2) + Series::one(3), arith_error);
}

TEST_CASE("h shifts") {
  CHECK(ser("2", 2, 4).shifted(-1) == ser("2", 1, 4));
  CHECK(Series::one(3).shifted(2) == ser("1", 2, 3));
  CHECK_THROWS_AS((Series::one(3) + Series::h(3)).shifted(-1), arith_error);
  // effective precision drops on downward shifts
  CHECK(ser("2", 2, 4).shifted(-2).effective_prec() == 2);
}

TEST_CASE("series inversion") {
  Series a = Series::one(2) - Series::h(2);
  Series inv = a.inverse();
  CHECK(inv == Series::one(2) + Series::h(2) + Series::monomial(1, 2, 2));
  CHECK(ser("2", 0, 3).inverse() == ser("1/2", 0, 3));
  CHECK_THROWS_AS(Series::h(3).inverse(), arith_error);
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    Series a = rand_series(rng, 6), b = rand_series(rng, 6), c = rand_series(rng, 6);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
  }
  for (int t = 0; t < 30; ++t) {
    Series u = rand_series(rng, 6, true);
    CHECK(u * u.inverse() == Series::one(6));
  }
}

namespace {

SeriesMatrix from_rows(int order, std::vector<std::vector<Series>> rows) {
  SeriesMatrix m(static_cast<int>(rows.size()),
                 static_cast<int>(rows.empty() ? 0 : rows[0].size()), order);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

} // namespace

TEST_CASE("smith normal form examples") {
  const int N = 4;
  CHECK(smith_normal_form(SeriesMatrix::identity(2, N)).divisors ==
        std::vector<int>{0, 0});

  SeriesMatrix d = from_rows(N, {{Series::h(N), Series::zero(N)},
                                 {Series::zero(N), Series::one(N)}});
  CHECK(smith_normal_form(d).divisors == std::vector<int>{0, 1});

  // [[h, h^2], [0, h^3]] -> divisors h^1, h^3 (column-reduce by hand)
  SeriesMatrix m = from_rows(N, {{Series::h(N), Series::monomial(1, 2, N)},
                                 {Series::zero(N), Series::monomial(1, 3, N)}});
  SmithResult s = smith_normal_form(m);
  CHECK(s.divisors == std::vector<int>{1, 3});
  CHECK(s.left * m * s.right == s.diag);
  CHECK(s.left * s.left_inv == SeriesMatrix::identity(2, N));
  CHECK(s.right * s.right_inv == SeriesMatrix::identity(2, N));
}

TEST_CASE("smith divisors are invariant under invertible transforms") {
  std::mt19937 rng(11);
  const int N = 5;
  auto random_matrix = [&](int r, int c) {
    SeriesMatrix m(r, c, N);
    std::uniform_int_distribution<int> pow(0, 3), pick(0, 2);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (pick(rng) == 0) m.at(i, j) = rand_series(rng, N).shifted(pow(rng));
    return m;
  };
  auto random_invertible = [&](int k) {
    SeriesMatrix u = SeriesMatrix::identity(k, N);
    std::uniform_int_distribution<int> idx(0, k - 1);
    for (int t = 0; t < 3 * k; ++t) {
      int a = idx(rng), b = idx(rng);
      if (a == b) continue;
      Series f = rand_series(rng, N);
      for (int j = 0; j < k; ++j) u.at(a, j) += f * u.at(b, j);
    }
    return u;
  };
  for (int t = 0; t < 10; ++t) {
    SeriesMatrix m = random_matrix(4, 3);
    SeriesMatrix u = random_invertible(4), v = random_invertible(3);
    CHECK(smith_normal_form(m).divisors == smith_normal_form(u * m * v).divisors);
  }
}
