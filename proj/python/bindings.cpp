// JSON-in, JSON-out bindings. Documents cross the boundary as text in the
// formats of docs/formats.md; the Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "troplin/io.hpp"
#include "troplin/klein.hpp"
#include "troplin/pairing.hpp"

namespace py = pybind11;
using namespace troplin;
using io::Json;

namespace {

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string dump(const Json& j) { return j.dump(); }

DeformationGauge parse_gauge(const std::string& g) {
  if (g == "smoothed") return DeformationGauge::smoothed;
  if (g == "none") return DeformationGauge::none;
  throw Error(ErrorCode::ParseError, "unknown gauge '" + g + "'");
}

std::string validate(const std::string& curve) {
  Json j = parse(curve);
  if (io::is_parametrized_curve(j)) return dump(io::to_json(validate_parametrized(io::parse_parametrized_curve(j))));
  return dump(io::to_json(validate_abstract(io::parse_abstract_curve(j))));
}

std::string deformation_basis_json(const std::string& curve, const std::string& gauge) {
  ParametrizedCurve h = io::parse_parametrized_curve(parse(curve));
  require_valid(h);
  Json out = Json::array();
  for (const auto& d : deformation_basis(h, parse_gauge(gauge))) {
    Json per = Json::object();
    for (std::size_t v = 0; v < d.size(); ++v) per[h.abstract.vertices()[v]] = io::vector_json(d[v]);
    out.push_back(per);
  }
  return dump(out);
}

std::size_t relative_h1_dimension(const std::string& curve) {
  Json j = parse(curve);
  AbstractCurve c = io::is_parametrized_curve(j) ? io::parse_parametrized_curve(j).abstract : io::parse_abstract_curve(j);
  require_valid(c);
  return relative_h1_basis(c).size();
}

std::string invariant_forms_json(const std::string& manifold, std::size_t degree) {
  Json out = Json::array();
  for (const auto& f : invariant_forms(io::parse_manifold(parse(manifold)), degree)) out.push_back(io::to_json(f));
  return dump(out);
}

Json isotropy_json(const IsotropyResult& r) {
  Json evals = Json::array();
  for (const auto& e : r.evaluations)
    evals.push_back({{"tuple", e.tuple},
                     {"direct", io::rational_json(e.direct)},
                     {"via_contraction", io::rational_json(e.via_contraction)}});
  return {{"deformation_dim", r.deformation_dim}, {"evaluations", evals}, {"report", io::to_json(r.report)}};
}

std::string isotropy(const std::string& curve, const std::string& form) {
  ParametrizedCurve h = io::parse_parametrized_curve(parse(curve));
  require_valid(h);
  return dump(isotropy_json(isotropy_check(h, io::parse_form(parse(form)))));
}

std::string isotropy_degree(const std::string& curve, std::size_t degree) {
  ParametrizedCurve h = io::parse_parametrized_curve(parse(curve));
  require_valid(h);
  return dump(isotropy_json(isotropy_check(h, degree)));
}

Json roitman_json(const RoitmanInstance& inst) {
  RoitmanResult r = roitman_bound_check(inst.space, inst.w);
  Json j{{"isotropic", r.isotropic}, {"dim_w", r.dim_w}, {"bound", r.bound}, {"blocks", inst.space.blocks.size()}};
  if (r.satisfied) j["satisfied"] = *r.satisfied;
  if (!r.isotropic) j["witness"] = {{"tuple", r.witness_tuple}, {"value", io::rational_json(r.witness_value)}};
  return j;
}

std::string roitman(const std::string& instance) { return dump(roitman_json(io::parse_roitman_instance(parse(instance)))); }

std::string roitman_curve(const std::string& curve, const std::string& form) {
  ParametrizedCurve h = io::parse_parametrized_curve(parse(curve));
  require_valid(h);
  return dump(roitman_json(restrict_to_infinity(h, io::parse_form(parse(form)))));
}

std::string evaluate(const std::string& curve) {
  ParametrizedCurve h = io::parse_parametrized_curve(parse(curve));
  require_valid(h);
  EvaluationAtInfinity ev = evaluate_at_infinity(h);
  return dump(Json{{"minus", io::to_json(ev.minus)}, {"plus", io::to_json(ev.plus)},
                   {"boundary", io::to_json(boundary_zero_cycle(h))}});
}

Json albanese_json(const AlbaneseClass& a) {
  return {{"degree", a.degree}, {"value", io::rational_json(a.value)}, {"modulus", io::rational_json(a.modulus)}};
}

std::string albanese(const std::string& klein, const std::string& cycle) {
  Manifold k = io::parse_manifold(parse(klein));
  return dump(albanese_json(albanese_class(k, io::parse_zero_cycle(parse(cycle), k))));
}

bool chow(const std::string& klein, const std::string& z1, const std::string& z2) {
  Manifold k = io::parse_manifold(parse(klein));
  return chow_equivalent(k, io::parse_zero_cycle(parse(z1), k), io::parse_zero_cycle(parse(z2), k));
}

std::string witness(const std::string& relation, const std::string& klein, const std::vector<std::string>& point) {
  Manifold k = io::parse_manifold(parse(klein));
  RatVector p;
  for (const auto& s : point) p.push_back(parse_rational(s));
  if (relation == "two-torsion") return dump(io::to_json(witness_two_torsion(k, p)));
  if (relation == "fiber") return dump(io::to_json(witness_fiber_relation(k, p)));
  throw Error(ErrorCode::ParseError, "unknown relation '" + relation + "'");
}

std::string jacobian_class(const std::string& c, const std::string& divisor) {
  return to_string(circle_jacobian_class(parse_rational(c), io::parse_circle_divisor(parse(divisor))));
}

std::string principal(const std::string& c, const std::string& divisor) {
  return dump(io::to_json(principal_function(parse_rational(c), io::parse_circle_divisor(parse(divisor)))));
}

}  // namespace

PYBIND11_MODULE(_troplin, m) {
  m.doc() = "Exact tropical curve verification; documents are JSON text.";

  static py::exception<Error> error(m, "TroplinError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(to_string(e.code())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def("validate", &validate, py::arg("curve"));
  m.def("deformation_basis", &deformation_basis_json, py::arg("curve"), py::arg("gauge") = "smoothed");
  m.def("relative_h1_dimension", &relative_h1_dimension, py::arg("curve"));
  m.def("invariant_forms", &invariant_forms_json, py::arg("manifold"), py::arg("degree"));
  m.def("isotropy", &isotropy, py::arg("curve"), py::arg("form"));
  m.def("isotropy_degree", &isotropy_degree, py::arg("curve"), py::arg("degree"));
  m.def("roitman", &roitman, py::arg("instance"));
  m.def("roitman_curve", &roitman_curve, py::arg("curve"), py::arg("form"));
  m.def("evaluate_at_infinity", &evaluate, py::arg("curve"));
  m.def("albanese_class", &albanese, py::arg("klein"), py::arg("cycle"));
  m.def("chow_equivalent", &chow, py::arg("klein"), py::arg("z1"), py::arg("z2"));
  m.def("witness", &witness, py::arg("relation"), py::arg("klein"), py::arg("point"));
  m.def("circle_jacobian_class", &jacobian_class, py::arg("circumference"), py::arg("divisor"));
  m.def("principal_function", &principal, py::arg("circumference"), py::arg("divisor"));
}
