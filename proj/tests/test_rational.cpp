#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stdquot/rational.hpp"

using namespace stdquot;

namespace {

MatQ mat(std::initializer_list<std::initializer_list<int>> rows) {
  MatQ m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("parse and format rationals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational(" -7 ") == Rational(-7));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1e-3") == Rational(-1, 1000));
  CHECK(parse_rational("2.5e2") == Rational(250));
  CHECK_THROWS_AS(parse_rational("1/0"), ExactError);
  CHECK_THROWS(parse_rational("pi"));
  CHECK_THROWS(parse_rational(""));
  CHECK(format_rational(Rational(-3, 4)) == "-3/4");
  CHECK(format_rational(Rational(8, 4)) == "2");
}

TEST_CASE("rank, kernel and inverse") {
  const MatQ a = mat({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank<Rational>(a) == 2);
  const MatQ k = kernel<Rational>(a);
  REQUIRE(k.cols() == 1);
  CHECK(is_zero_matrix<Rational>(MatQ(a * k)));
  // canonical basis: free variable set to one
  CHECK(k(2, 0) == 1);
  CHECK(k(0, 0) == -1);
  CHECK(k(1, 0) == -1);

  const MatQ b = mat({{2, 1}, {7, 4}});
  const MatQ bi = inverse(b);
  CHECK(bi == mat({{4, -1}, {-7, 2}}));
  CHECK_THROWS(inverse(a));
}

TEST_CASE("solve and column basis") {
  const MatQ a = mat({{1, 0}, {0, 1}, {1, 1}});
  MatQ x;
  CHECK(solve<Rational>(a, mat({{2}, {3}, {5}}), x));
  CHECK(x == mat({{2}, {3}}));
  CHECK_FALSE(solve<Rational>(a, mat({{2}, {3}, {4}}), x));
  CHECK(column_basis<Rational>(mat({{1, 2, 0}, {2, 4, 1}})).cols() == 2);
}

TEST_CASE("gaussian rationals") {
  const GaussRational i(Rational(0), Rational(1));
  CHECK(i * i == GaussRational(-1));
  CHECK(GaussRational(1) / i == GaussRational(Rational(0), Rational(-1)));
  MatG r(2, 2);
  r << 0, -1, 1, 0;
  MatG shifted = r;
  shifted(0, 0) -= i;
  shifted(1, 1) -= i;
  const MatG k = kernel<GaussRational>(shifted);
  REQUIRE(k.cols() == 1);
  CHECK(is_zero_matrix<GaussRational>(MatG(r * k - i * k)));
  CHECK(rank<GaussRational>(to_gauss(mat({{1, 1}, {1, 1}}))) == 1);
}

TEST_CASE("signature of symmetric forms") {
  CHECK(signature(mat({{0, 1}, {1, 0}})) == Signature{1, 1, 0});
  CHECK(signature(mat({{1, 2}, {2, 4}})) == Signature{1, 0, 1});
  CHECK(signature(mat({{-1, 0, 0}, {0, -2, 0}, {0, 0, 3}})) == Signature{1, 2, 0});
  const MatQ s = mat({{0, 1, 0}, {1, 0, 2}, {0, 2, 1}});
  const MatQ p = diagonalizing_congruence(s);
  const MatQ d = p.transpose() * s * p;
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      if (i != j) CHECK(d(i, j) == 0);
}

TEST_CASE("rationalize") {
  CHECK(rationalize(0.3333333333, 1000) == Rational(1, 3));
  CHECK(rationalize(-2.5, 10) == Rational(-5, 2));
  CHECK(rationalize(3.14159265, 120) == Rational(355, 113));
  CHECK(numerator_of(Rational(-6, 4)) == -3);
  CHECK(denominator_of(Rational(-6, 4)) == 2);
}

TEST_CASE("commutator and sparse product") {
  const MatQ x = mat({{0, 1}, {0, 0}});
  const MatQ y = mat({{0, 0}, {1, 0}});
  CHECK(commutator<Rational>(x, y) == mat({{1, 0}, {0, -1}}));
  CHECK(sparse_product<Rational>(x, y) == MatQ(x * y));
}
