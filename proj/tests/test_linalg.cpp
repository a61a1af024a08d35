#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fuzz.hpp"
#include "oracles.hpp"
#include "troplin/linalg.hpp"

using namespace troplin;

namespace {

oracle::Rows rows_of(const IntMatrix& m) {
  oracle::Rows r(m.rows(), std::vector<oracle::Q>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = oracle::Q(m(i, j));
  return r;
}

IntMatrix random_matrix(fuzz::Gen& g, std::size_t r, std::size_t c, std::int64_t bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = g.integer(-bound, bound);
  return m;
}

void check_hermite(const IntMatrix& m) {
  HermiteForm h = hermite_normal_form(m);
  CHECK(h.U * m == h.H);
  CHECK(abs(determinant(h.U)) == 1);
  // Echelon shape with positive pivots and reduced entries above them.
  std::size_t last_pivot = 0;
  bool first = true;
  for (std::size_t i = 0; i < h.H.rows(); ++i) {
    std::size_t c = 0;
    while (c < h.H.cols() && h.H(i, c) == 0) ++c;
    if (c == h.H.cols()) {
      CHECK(i >= h.rank);
      continue;
    }
    CHECK(i < h.rank);
    CHECK((first || c > last_pivot));
    CHECK(h.H(i, c) > 0);
    for (std::size_t k = 0; k < i; ++k) {
      CHECK(h.H(k, c) >= 0);
      CHECK(h.H(k, c) < h.H(i, c));
    }
    last_pivot = c;
    first = false;
  }
}

}  // namespace

TEST_CASE("rationals print as p/q and parse back") {
  CHECK(to_string(Rational(3, 6)) == "1/2");
  CHECK(to_string(Rational(-4, 2)) == "-2");
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2.5") == Rational(-5, 2));
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(floor(Rational(-1, 2)) == -1);
  CHECK(mod(Rational(-1, 2), Rational(3)) == Rational(5, 2));
}

TEST_CASE("hermite normal form examples") {
  IntMatrix m{{2, 4}, {1, 3}};
  HermiteForm h = hermite_normal_form(m);
  // Entries above pivots land in [0, pivot): 3 reduces to 1 mod 2.
  CHECK(h.H == IntMatrix{{1, 1}, {0, 2}});
  check_hermite(m);

  HermiteForm id = hermite_normal_form(IntMatrix::identity(3));
  CHECK(id.H == IntMatrix::identity(3));
  CHECK(id.U == IntMatrix::identity(3));

  HermiteForm zero = hermite_normal_form(IntMatrix(2, 2));
  CHECK(zero.H == IntMatrix(2, 2));
  CHECK(zero.U == IntMatrix::identity(2));
  CHECK(zero.rank == 0);
}

TEST_CASE("hermite normal form on random matrices") {
  fuzz::Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto r = static_cast<std::size_t>(g.integer(1, 5));
    auto c = static_cast<std::size_t>(g.integer(1, 5));
    IntMatrix m = random_matrix(g, r, c, 6);
    check_hermite(m);
    CHECK(hermite_normal_form(m).rank == oracle::rank(rows_of(m)));
  }
}

TEST_CASE("kernel examples") {
  auto k = rational_kernel(RatMatrix{{1, -1}});
  REQUIRE(k.size() == 1);
  CHECK(k[0] == RatVector{1, 1});
  CHECK(integer_kernel(IntMatrix{{2}}).empty());
  auto ik = integer_kernel(IntMatrix{{2, 4}});
  REQUIRE(ik.size() == 1);
  CHECK(content(ik[0]) == 1);
  CHECK(ik[0][0] * 2 + ik[0][1] * 4 == 0);
}

TEST_CASE("kernels of random 4x6 matrices match the elimination oracle") {
  fuzz::Gen g(12);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m = random_matrix(g, 4, 6, 3);
    if (g.coin(0.3))
      for (std::size_t j = 0; j < 6; ++j) m(3, j) = m(0, j) * 2 - m(1, j);  // force a dependency
    const std::size_t expected = 6 - oracle::rank(rows_of(m));
    auto ik = integer_kernel(m);
    auto rk = rational_kernel(to_rational(m));
    CHECK(ik.size() == expected);
    CHECK(rk.size() == expected);
    for (const auto& v : ik) CHECK(is_zero(m.apply(v)));
    for (const auto& v : rk) CHECK(is_zero(to_rational(m).apply(v)));

    // Saturation: integer vectors of the rational kernel are integer
    // combinations of the returned basis. With the basis in Hermite form,
    // solve by the pivots and check the combination is integral and exact.
    for (const auto& v : rk) {
      Integer den = 1;
      for (const auto& x : v) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
      IntVector w;
      for (const auto& x : v) w.push_back(boost::multiprecision::numerator(Rational(x * den)));
      for (int mult = 1; mult <= 2; ++mult) {
        IntVector target = w;
        for (auto& x : target) x *= mult;
        Integer c = content(target);
        if (c == 0) continue;
        for (auto& x : target) x /= c;  // primitive, still in the kernel
        IntVector residual = target;
        for (const auto& b : ik) {
          std::size_t p = 0;
          while (b[p] == 0) ++p;
          Integer q = residual[p] / b[p];
          CHECK(residual[p] % b[p] == 0);
          for (std::size_t j = 0; j < residual.size(); ++j) residual[j] -= q * b[j];
        }
        CHECK(is_zero(residual));
      }
    }
  }
}

TEST_CASE("primitive part") {
  auto p = primitive_part(IntVector{2, 4});
  CHECK(p.direction == IntVector{1, 2});
  CHECK(p.multiple == 2);
  p = primitive_part(IntVector{0, -3});
  CHECK(p.direction == IntVector{0, -1});
  CHECK(p.multiple == 3);
  p = primitive_part(IntVector{1, 0});
  CHECK(p.direction == IntVector{1, 0});
  CHECK(p.multiple == 1);
  CHECK_THROWS_AS(primitive_part(IntVector{0, 0}), Error);

  fuzz::Gen g(13);
  for (int trial = 0; trial < 500; ++trial) {
    IntVector v{g.integer(-50, 50), g.integer(-50, 50), g.integer(-50, 50)};
    if (is_zero(v)) continue;
    auto pp = primitive_part(v);
    CHECK(content(pp.direction) == 1);
    CHECK(pp.multiple > 0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(pp.direction[i] * pp.multiple == v[i]);
  }
}

TEST_CASE("determinants and inverses agree with the oracle") {
  fuzz::Gen g(14);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_matrix(g, 3, 3, 4);
    CHECK(Rational(determinant(m)) == oracle::det(rows_of(m)));
    if (determinant(m) != 0) {
      RatMatrix inv = inverse(to_rational(m));
      CHECK(inv * to_rational(m) == RatMatrix::identity(3));
    } else {
      CHECK_THROWS_AS(inverse(to_rational(m)), Error);
    }
  }
  IntMatrix u{{2, 1}, {1, 1}};
  CHECK(inverse_unimodular(u) * u == IntMatrix::identity(2));
  CHECK_THROWS_AS(inverse_unimodular(IntMatrix{{2, 0}, {0, 1}}), Error);
}

TEST_CASE("combinations are lexicographic") {
  auto c = combinations(4, 2);
  REQUIRE(c.size() == 6);
  CHECK(c.front() == std::vector<std::size_t>{0, 1});
  CHECK(c[2] == std::vector<std::size_t>{0, 3});
  CHECK(c.back() == std::vector<std::size_t>{2, 3});
  CHECK(combinations(3, 0).size() == 1);
}
