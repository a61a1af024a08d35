#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fuzz.hpp"
#include "troplin/io.hpp"
#include "troplin/pairing.hpp"

using namespace troplin;

namespace {

ParametrizedCurve load(const std::string& name) {
  return io::parse_parametrized_curve(io::read_file(std::string(TROPLIN_DATA_DIR) + "/" + name));
}

TropicalForm form(std::size_t dim, std::initializer_list<std::size_t> idx) {
  std::vector<std::size_t> v(idx);
  return TropicalForm::basis(dim, v);
}

Deformation random_combination(fuzz::Gen& g, const std::vector<Deformation>& basis, std::size_t vertices,
                               std::size_t dim) {
  RatVector acc(vertices * dim);
  for (const auto& b : basis) {
    const Rational c = g.rational(-3, 3);
    RatVector f = flatten(b);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * f[i];
  }
  return unflatten(acc, vertices, dim);
}

ParametrizedCurve fuzzed_horizontal(fuzz::Gen& g, int trial) {
  return trial % 2 ? fuzz::theta_curve(g) : fuzz::torus_modification(g);
}

}  // namespace

TEST_CASE("contraction on the tripod") {
  ParametrizedCurve h = io::parse_parametrized_curve(io::Json::parse(R"({
    "manifold": {"kind": "euclidean", "dim": 2},
    "vertices": ["o"], "positions": {"o": ["0", "0"]},
    "edges": [
      {"id": "x", "tail": "o", "boundary": true, "direction": [1, 0]},
      {"id": "y", "tail": "o", "boundary": true, "direction": [0, 1]},
      {"id": "z", "tail": "o", "boundary": true, "direction": [-1, -1]}]})"));
  std::vector<Deformation> d{{RatVector{1, 0}}};
  LocallyConstantForm f = phi_contract(h, form(2, {0, 1}), d);
  CHECK(f.values == RatVector{0, 1, -1});
  CHECK(is_zero(vertex_residuals(h.abstract, f)));

  std::vector<Deformation> zero{{RatVector{0, 0}}};
  CHECK(is_zero(phi_contract(h, form(2, {0, 1}), zero).values));

  CHECK_THROWS_AS(phi_contract(h, form(2, {0, 1}), std::vector<Deformation>{}), Error);
}

TEST_CASE("contraction satisfies the vertex equations on fuzzed curves") {
  fuzz::Gen g(51);
  const TropicalForm volume = form(3, {0, 1, 2});
  const TropicalForm dxdt = form(3, {0, 2});
  for (int trial = 0; trial < 80; ++trial) {
    ParametrizedCurve h = fuzzed_horizontal(g, trial);
    auto basis = deformation_basis(h, DeformationGauge::none);
    const std::size_t nv = h.abstract.vertex_count();
    std::vector<Deformation> two{random_combination(g, basis, nv, 3), random_combination(g, basis, nv, 3)};
    CHECK(is_deformation(h, two[0]));
    CHECK(is_zero(vertex_residuals(h.abstract, phi_contract(h, volume, two))));
    CHECK(is_zero(vertex_residuals(h.abstract, phi_contract(h, dxdt, std::span(two).first(1)))));
  }
}

TEST_CASE("contraction on the torus cycle with a constant translation") {
  ParametrizedCurve h = load("t2-cycle.json");
  std::vector<Deformation> d{{RatVector{1, 0, 0}, RatVector{1, 0, 0}}, {RatVector{0, 1, 0}, RatVector{0, 1, 0}}};
  LocallyConstantForm f = phi_contract(h, form(3, {0, 1, 2}), d);
  CHECK(is_zero(vertex_residuals(h.abstract, f)));
  CHECK(f.values[0] == 1);
  CHECK(f.values[1] == -1);
  CHECK(f.values[2] == -2);
  CHECK(f.values[3] == 2);
}

TEST_CASE("contraction errors") {
  ParametrizedCurve h = load("t2-cycle.json");
  std::vector<Deformation> bad{{RatVector{1, 0, 0}, RatVector{0, 0, 0}}};
  CHECK_FALSE(is_deformation(h, bad[0]));
  try {
    phi_contract(h, form(3, {0, 1}), bad);
    FAIL("expected NotADeformation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotADeformation);
  }
  ParametrizedCurve circle = io::parse_parametrized_curve(io::Json::parse(R"({
    "manifold": {"kind": "klein", "x0": "2", "y0": "3"},
    "vertices": ["v"], "positions": {"v": ["0", "1"]},
    "edges": [{"id": "e", "tail": "v", "head": "v", "length": "4", "direction": [1, 0], "deck": "b^-2"}]})"));
  std::vector<Deformation> shift{{RatVector{1, 0}}};
  try {
    phi_contract(circle, form(2, {0, 1}), shift);
    FAIL("expected FormNotInvariant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FormNotInvariant);
  }
}

TEST_CASE("isotropy on the torus cycle") {
  IsotropyResult r = isotropy_check(load("t2-cycle.json"), form(2, {0, 1}));
  CHECK(r.report.passed());
  CHECK(r.deformation_dim == 3);
  CHECK(r.evaluations.size() == 3);
  for (const auto& e : r.evaluations) {
    CHECK(e.direct == 0);
    CHECK(e.via_contraction == 0);
  }
  IsotropyResult fig2 = isotropy_check(load("fig2.json"), 2);
  CHECK(fig2.report.passed());
  CHECK_THROWS_AS(isotropy_check(load("t2-cycle.json"), form(2, {0})), Error);
  CHECK_THROWS_AS(isotropy_check(load("fig1a.json"), form(2, {0, 1})), Error);
}

TEST_CASE("isotropy holds exactly on fuzzed horizontal curves") {
  fuzz::Gen g(52);
  for (int trial = 0; trial < 100; ++trial) {
    ParametrizedCurve h = fuzzed_horizontal(g, trial);
    REQUIRE(h.abstract.vertex_count() <= 9);
    TropicalForm w = TropicalForm::zero(2, 2);
    w.coefficients[0] = g.integer(1, 5);
    IsotropyResult r = isotropy_check(h, w);
    CHECK(r.report.passed());
    for (const auto& e : r.evaluations) {
      CHECK(e.direct == 0);
      CHECK(e.via_contraction == 0);
    }
  }
}

TEST_CASE("graded space evaluation and the bound") {
  const TropicalForm area = form(2, {0, 1});
  GradedSpace four{{{2, 1, area}, {2, 1, area}, {2, -1, area}, {2, -1, area}}};
  CHECK(four.total_dimension() == 8);
  CHECK(four.degree() == 2);
  std::vector<RatVector> w{{1, 0, 1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, 1, 0, 1}};
  RoitmanResult r = roitman_bound_check(four, w);
  CHECK(r.isotropic);
  CHECK(r.dim_w == 2);
  CHECK(r.bound == 4);
  CHECK(r.satisfied == true);

  std::vector<RatVector> block{{1, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0, 0}};
  RoitmanResult nb = roitman_bound_check(four, block);
  CHECK_FALSE(nb.isotropic);
  CHECK_FALSE(nb.satisfied.has_value());
  CHECK(nb.witness_value != 0);

  RoitmanResult empty = roitman_bound_check(four, std::vector<RatVector>{});
  CHECK(empty.isotropic);
  CHECK(empty.dim_w == 0);
  CHECK(empty.satisfied == true);

  // Dependent vectors do not inflate dim W.
  std::vector<RatVector> dependent{w[0], w[1], {2, 3, 2, 3, 2, 3, 2, 3}};
  CHECK(roitman_bound_check(four, dependent).dim_w == 2);

  // A maximal isotropic subspace of a degenerate form meets the bound exactly.
  GradedSpace one{{{4, 1, TropicalForm::zero(4, 2)}}};
  one.blocks[0].form.coefficients[0] = 1;  // dx1^dx2
  std::vector<RatVector> big{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  RoitmanResult over = roitman_bound_check(one, big);
  CHECK(over.isotropic);
  CHECK(over.dim_w == 3);
  CHECK(over.bound == 3);
  CHECK(over.satisfied == true);

  CHECK_THROWS_AS(roitman_bound_check(four, std::vector<RatVector>{{1, 0}}), Error);
  GradedSpace zero_form{{{2, 1, TropicalForm::zero(2, 2)}}};
  try {
    roitman_bound_check(zero_form, std::vector<RatVector>{});
    FAIL("expected NotAForm");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAForm);
  }
}

TEST_CASE("infinity restrictions of fuzzed curves are isotropic and bounded") {
  fuzz::Gen g(53);
  for (int trial = 0; trial < 100; ++trial) {
    ParametrizedCurve h = fuzzed_horizontal(g, trial);
    RoitmanInstance inst = restrict_to_infinity(h, form(2, {0, 1}));
    std::size_t copies = 0;
    for (const auto& end : ends_at_infinity(h)) copies += static_cast<std::size_t>(end.weight);
    CHECK(inst.space.blocks.size() == copies);
    RoitmanResult r = roitman_bound_check(inst.space, inst.w);
    CHECK(r.isotropic);
    CHECK(r.satisfied == true);
    CHECK(r.dim_w <= r.bound);
  }
}
