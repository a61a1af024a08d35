#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fuzz.hpp"
#include "oracles.hpp"
#include "troplin/curve.hpp"

using namespace troplin;

namespace {

std::vector<oracle::Edge> oracle_edges(const AbstractCurve& c) {
  std::vector<oracle::Edge> out;
  for (std::size_t e = 0; e < c.edge_count(); ++e) out.push_back({c.tail_index(e), c.head_index(e)});
  return out;
}

AbstractEdge finite(std::string id, std::string t, std::string h, Rational len = 1) {
  return {std::move(id), std::move(t), std::move(h), EdgeLength::finite(std::move(len))};
}

AbstractEdge leg(std::string id, std::string t) {
  return {std::move(id), std::move(t), std::nullopt, EdgeLength::infinite()};
}

void check_boundary_of_eta(const AbstractCurve& c) {
  RatMatrix d = relative_boundary_matrix(c);
  auto forms = locally_constant_forms(c);
  std::vector<RatVector> chains;
  for (const auto& f : forms) {
    CHECK(is_zero(vertex_residuals(c, f)));
    RatVector chain = eta(c, f);
    CHECK(is_zero(d.apply(chain)));
    chains.push_back(chain);
  }
  // eta sends the basis to independent cycles.
  oracle::Rows rows;
  for (const auto& ch : chains) rows.emplace_back(ch.begin(), ch.end());
  CHECK(oracle::rank(rows) == chains.size());
}

}  // namespace

TEST_CASE("edge lengths") {
  CHECK(parse_length("inf").is_infinite());
  CHECK(parse_length("3/2").value() == Rational(3, 2));
  CHECK(to_string(EdgeLength::finite(Rational(1, 3))) == "1/3");
  CHECK(to_string(EdgeLength::infinite()) == "inf");
  CHECK_THROWS_AS(EdgeLength::infinite().value(), Error);
}

TEST_CASE("abstract validation") {
  AbstractCurve theta({"u", "v"}, {finite("a", "u", "v"), finite("b", "u", "v"), finite("c", "v", "u"), leg("x", "u")});
  CHECK(validate_abstract(theta).passed());

  AbstractCurve dup({"u"}, {leg("a", "u"), leg("a", "u")});
  CHECK_FALSE(validate_abstract(dup).passed());

  AbstractCurve dangling({"u"}, {finite("a", "u", "w"), leg("b", "u")});
  CHECK_FALSE(validate_abstract(dangling).passed());
  CHECK_THROWS_AS(require_valid(dangling), Error);

  AbstractCurve bad_length({"u", "v"}, {{"a", "u", "v", EdgeLength::infinite()}, leg("b", "u"), leg("c", "v")});
  CHECK_FALSE(validate_abstract(bad_length).passed());

  AbstractCurve negative({"u"}, {finite("a", "u", "u", -1)});
  CHECK_FALSE(validate_abstract(negative).passed());

  AbstractCurve one_valent({"u", "v"}, {finite("a", "u", "v"), leg("b", "u")});
  CHECK_FALSE(validate_abstract(one_valent).passed());
}

TEST_CASE("relative homology examples") {
  // A line through one vertex: one relative cycle from boundary to boundary.
  AbstractCurve line({"o"}, {leg("l", "o"), leg("r", "o")});
  CHECK(relative_h1_basis(line).size() == 1);
  CHECK(locally_constant_forms(line).size() == 1);

  // A loop: absolute H1.
  AbstractCurve loop({"o"}, {finite("e", "o", "o")});
  CHECK(relative_h1_basis(loop).size() == 1);
  CHECK(relative_boundary_matrix(loop) == RatMatrix(1, 1));

  // Tripod: b - 1.
  AbstractCurve tripod({"o"}, {leg("a", "o"), leg("b", "o"), leg("c", "o")});
  CHECK(relative_h1_basis(tripod).size() == 2);

  AbstractCurve theta({"u", "v"}, {finite("a", "u", "v"), finite("b", "u", "v"), finite("c", "v", "u"), leg("x", "u")});
  CHECK(relative_h1_basis(theta).size() == 2);
  check_boundary_of_eta(theta);
}

TEST_CASE("locally constant forms match relative homology on random curves") {
  fuzz::Gen g(31);
  for (int trial = 0; trial < 500; ++trial) {
    AbstractCurve c = fuzz::abstract_curve(g);
    REQUIRE(c.edge_count() <= 12);
    REQUIRE(validate_abstract(c).passed());
    const std::size_t expected = oracle::relative_h1_dim(c.vertex_count(), oracle_edges(c));
    CHECK(relative_h1_basis(c).size() == expected);
    CHECK(locally_constant_forms(c).size() == expected);
    check_boundary_of_eta(c);
  }
}

TEST_CASE("trees with b boundary points have b - 1 forms") {
  fuzz::Gen g(32);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 7));
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<AbstractEdge> es;
    std::vector<std::size_t> valence(n);
    for (std::size_t i = 1; i < n; ++i) {
      const auto parent = static_cast<std::size_t>(g.integer(0, static_cast<std::int64_t>(i) - 1));
      es.push_back(finite("t" + std::to_string(i), vs[parent], vs[i], g.positive()));
      ++valence[parent];
      ++valence[i];
    }
    std::size_t b = 0;
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t extra = valence[v] >= 2 ? static_cast<std::size_t>(g.integer(0, 1)) : 2 - valence[v];
      if (n == 1) extra = std::max<std::size_t>(extra, 2);
      for (std::size_t k = 0; k < extra; ++k, ++b) es.push_back(leg("b" + std::to_string(b), vs[v]));
    }
    AbstractCurve tree(vs, es);
    REQUIRE(validate_abstract(tree).passed());
    CHECK(locally_constant_forms(tree).size() == b - 1);
  }
}

TEST_CASE("eta rejects non-forms") {
  AbstractCurve line({"o"}, {leg("l", "o"), leg("r", "o")});
  try {
    eta(line, LocallyConstantForm{RatVector{1, 1}});
    FAIL("expected NotAForm");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAForm);
  }
  // Both legs leave o, so opposite values balance.
  CHECK(eta(line, LocallyConstantForm{RatVector{1, -1}}) == RatVector{1, -1});
}

TEST_CASE("self-loops contribute nothing to the boundary") {
  AbstractCurve c({"o"}, {finite("loop", "o", "o"), leg("l", "o"), leg("r", "o")});
  RatMatrix d = relative_boundary_matrix(c);
  CHECK(d(0, 0) == 0);
  CHECK(relative_h1_basis(c).size() == 2);
  CHECK(connected_components(c).size() == 1);
}
