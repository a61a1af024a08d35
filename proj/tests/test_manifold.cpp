#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fuzz.hpp"
#include "troplin/manifold.hpp"

using namespace troplin;

TEST_CASE("make_klein presentation") {
  Manifold k = make_klein(2, 3);
  CHECK(k.dim() == 2);
  REQUIRE(k.generators().size() == 2);
  CHECK(k.generator("a") == DeckElement{IntMatrix::identity(2), RatVector{0, 3}});
  CHECK(k.generator("b") == DeckElement{IntMatrix{{1, 0}, {0, -1}}, RatVector{2, 0}});
  CHECK(make_klein(1, 1).generator("b").translation == RatVector{1, 0});
  try {
    make_klein(0, 1);
    FAIL("expected NonPositiveParameter");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveParameter);
  }
  CHECK_THROWS_AS(k.generator("c"), Error);
}

TEST_CASE("tori, euclidean spaces and products") {
  Manifold t = make_torus({{4, 0}, {0, 4}});
  CHECK(t.generators().size() == 2);
  CHECK(t.generator("a").translation == RatVector{4, 0});
  CHECK(make_euclidean(2).generators().empty());
  try {
    make_torus({{1, 2}, {2, 4}});
    FAIL("expected DegenerateLattice");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateLattice);
  }
  Manifold p = product_with_line(make_klein(2, 3));
  CHECK(p.dim() == 3);
  CHECK(p.base()->kind() == ManifoldKind::klein);
  for (const auto& g : p.generators()) {
    CHECK(g.element.linear(2, 2) == 1);
    CHECK(g.element.linear(0, 2) == 0);
    CHECK(g.element.translation[2] == 0);
  }
}

TEST_CASE("deck elements and words") {
  Manifold k = make_klein(2, 3);
  CHECK(apply_deck(k.generator("b"), RatVector{Rational(1, 2), 1}) == RatVector{Rational(5, 2), -1});
  CHECK(k.resolve_word("a a").apply(RatVector{0, 0}) == RatVector{0, 6});
  CHECK(k.resolve_word("a^2") == k.resolve_word("a a"));
  CHECK(k.resolve_word("1").is_identity());
  CHECK(k.resolve_word("").is_identity());
  // Rightmost factor acts first.
  RatVector x{Rational(1, 3), Rational(1, 5)};
  CHECK(k.resolve_word("a b").apply(x) == k.generator("a").apply(k.generator("b").apply(x)));
  CHECK(k.resolve_word("b^-1 b").is_identity());
  DeckElement g = k.resolve_word("a^-1 b^2 a");
  CHECK(g.compose(g.inverse()).is_identity());
  CHECK_THROWS_AS(k.resolve_word("z"), Error);
}

TEST_CASE("general kind checks unimodularity") {
  CHECK_NOTHROW(Manifold::general(2, {{"s", {IntMatrix{{1, 1}, {0, 1}}, RatVector{0, 1}}}}));
  try {
    Manifold::general(2, {{"s", {IntMatrix{{2, 0}, {0, 1}}, RatVector{0, 1}}}});
    FAIL("expected NotUnimodular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnimodular);
  }
}

TEST_CASE("invariant forms") {
  Manifold k = make_klein(2, 3);
  auto one = invariant_forms(k, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].coefficients == IntVector{1, 0});  // dx
  CHECK(invariant_forms(k, 2).empty());
  Manifold t = make_torus({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  for (std::size_t p = 0; p <= 3; ++p) CHECK(invariant_forms(t, p).size() == binomial(3, p));

  // Every returned form is fixed by every generator.
  Manifold s = Manifold::general(3, {{"s", {IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, RatVector{0, 0, 1}}}});
  for (std::size_t p = 0; p <= 3; ++p)
    for (const auto& f : invariant_forms(s, p)) CHECK(is_invariant(f, s));
  CHECK(invariant_forms(s, 3).empty());  // the swap reverses orientation
}

TEST_CASE("form evaluation and pullback") {
  std::size_t idx[] = {0, 1};
  TropicalForm area = TropicalForm::basis(2, idx);
  CHECK(area.evaluate(std::vector<RatVector>{{1, 0}, {0, 1}}) == 1);
  CHECK(area.evaluate(std::vector<RatVector>{{0, 1}, {1, 0}}) == -1);
  CHECK(area.pullback(IntMatrix{{1, 0}, {0, -1}}).coefficients == IntVector{-1});
  TropicalForm lifted = area.wedge_line();
  CHECK(lifted.dim == 3);
  CHECK(lifted.degree == 3);
  CHECK(lifted.coefficients == IntVector{1});

  fuzz::Gen g(21);
  for (int trial = 0; trial < 100; ++trial) {
    TropicalForm f = TropicalForm::zero(3, 2);
    for (auto& c : f.coefficients) c = g.integer(-3, 3);
    IntMatrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = g.integer(-2, 2);
    std::vector<RatVector> v{{g.rational(-2, 2), g.rational(-2, 2), g.rational(-2, 2)},
                             {g.rational(-2, 2), g.rational(-2, 2), g.rational(-2, 2)}};
    std::vector<RatVector> av{to_rational(a).apply(v[0]), to_rational(a).apply(v[1])};
    CHECK(f.pullback(a).evaluate(v) == f.evaluate(av));
  }
}

TEST_CASE("albanese data") {
  AlbaneseData k = albanese_data(make_klein(2, 3));
  CHECK(k.rank == 1);
  REQUIRE(k.periods.size() == 2);
  CHECK(k.periods[0] == RatVector{0});
  CHECK(k.periods[1] == RatVector{2});
  REQUIRE(k.lattice_basis.size() == 1);
  CHECK(k.lattice_basis[0] == RatVector{2});

  AlbaneseData e = albanese_data(make_euclidean(2));
  CHECK(e.rank == 2);
  CHECK(e.periods.empty());

  AlbaneseData c = albanese_data(make_torus({{1}}));
  CHECK(c.rank == 1);
  CHECK(c.periods == std::vector<RatVector>{{1}});

  // Periods are basepoint free: alpha o (A - I) = 0.
  Manifold s = Manifold::general(2, {{"s", {IntMatrix{{1, 0}, {0, -1}}, RatVector{Rational(3, 2), 0}}}});
  AlbaneseData sd = albanese_data(s);
  for (const auto& f : sd.forms)
    for (const auto& g : s.generators()) {
      for (std::size_t j = 0; j < 2; ++j) {
        Integer acc = 0;
        for (std::size_t i = 0; i < 2; ++i)
          acc += f.coefficients[i] * (g.element.linear(i, j) - (i == j ? 1 : 0));
        CHECK(acc == 0);
      }
    }
}

TEST_CASE("reduce_point") {
  Manifold k = make_klein(2, 3);
  CHECK(reduce_point(k, RatVector{Rational(5, 2), -1}) == RatVector{Rational(1, 2), 1});
  Manifold t = make_torus({{4, 0}, {0, 4}});
  CHECK(reduce_point(t, RatVector{5, -1}) == RatVector{1, 3});
  CHECK(reduce_point(make_euclidean(2), RatVector{7, -3}) == RatVector{7, -3});
  try {
    reduce_point(Manifold::general(1, {{"s", {IntMatrix{{1}}, RatVector{1}}}}), RatVector{0});
    FAIL("expected UnsupportedManifoldKind");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedManifoldKind);
  }
}

TEST_CASE("reduce_point is idempotent and deck invariant") {
  fuzz::Gen g(22);
  for (int trial = 0; trial < 300; ++trial) {
    Manifold m = trial % 3 == 0   ? make_klein(g.positive(), g.positive())
                 : trial % 3 == 1 ? make_torus({{g.positive(), g.rational(-2, 2)}, {0, g.positive()}})
                                  : product_with_line(make_klein(g.positive(), g.positive()));
    RatVector x;
    for (std::size_t i = 0; i < m.dim(); ++i) x.push_back(g.rational(-9, 9));
    RatVector r = reduce_point(m, x);
    CHECK(reduce_point(m, r) == r);
    for (const auto& gen : m.generators()) {
      CHECK(reduce_point(m, gen.element.apply(x)) == r);
      CHECK(reduce_point(m, gen.element.inverse().apply(x)) == r);
    }
  }
}
