#include "troplin/pairing.hpp"

#include <sstream>

namespace troplin {

namespace {

RatVector project_to_base(const RatVector& v) { return RatVector(v.begin(), v.end() - 1); }

std::string tuple_name(std::span<const std::size_t> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

void require_form_on(const TropicalForm& form, std::size_t dim) {
  if (form.dim != dim || form.coefficients.size() != binomial(form.dim, form.degree))
    throw Error(ErrorCode::DimensionMismatch,
                "form lives in dimension " + std::to_string(form.dim) + ", expected " +
                    std::to_string(dim));
}

}  // namespace

bool is_deformation(const ParametrizedCurve& h, const Deformation& d) {
  const std::size_t n = h.manifold.dim();
  if (d.size() != h.abstract.vertex_count()) return false;
  for (const auto& v : d)
    if (v.size() != n) return false;
  IntMatrix rows = deformation_constraints(h, DeformationGauge::none);
  if (rows.rows() == 0) return true;
  return is_zero(to_rational(rows).apply(flatten(d)));
}

LocallyConstantForm phi_contract(const ParametrizedCurve& h, const TropicalForm& form,
                                 std::span<const Deformation> deformations) {
  require_valid(h);
  const std::size_t n = h.manifold.dim();
  require_form_on(form, n);
  if (form.degree != deformations.size() + 1)
    throw Error(ErrorCode::DimensionMismatch,
                "a form of degree " + std::to_string(form.degree) + " needs " +
                    std::to_string(form.degree == 0 ? 0 : form.degree - 1) + " deformations");
  if (!is_invariant(form, h.manifold))
    throw Error(ErrorCode::FormNotInvariant, "form is not invariant under the deck group");
  for (std::size_t i = 0; i < deformations.size(); ++i)
    if (!is_deformation(h, deformations[i]))
      throw Error(ErrorCode::NotADeformation,
                  "argument " + std::to_string(i) + " does not keep edge directions");

  LocallyConstantForm out;
  for (std::size_t e = 0; e < h.abstract.edge_count(); ++e) {
    const auto& data = h.edges[e];
    const std::size_t tail = h.abstract.tail_index(e);
    std::vector<RatVector> args;
    for (const auto& d : deformations) args.push_back(d[tail]);
    args.push_back(to_rational(data.direction));
    Rational value = Rational(data.weight) * form.evaluate(args);

    if (auto head = h.abstract.head_index(e)) {
      // The same value read in the head chart.
      std::vector<RatVector> at_head;
      for (const auto& d : deformations) at_head.push_back(d[*head]);
      at_head.push_back(to_rational(data.deck.apply_linear(std::span<const Integer>(data.direction))));
      if (Rational(data.weight) * form.evaluate(at_head) != value)
        throw Error(ErrorCode::ValidationFailed,
                    "contraction differs between the charts of edge '" + h.abstract.edges()[e].id + "'");
    }
    out.values.push_back(std::move(value));
  }
  RatVector residual = vertex_residuals(h.abstract, out);
  if (!is_zero(residual))
    throw Error(ErrorCode::ValidationFailed, "contraction violates a vertex equation");
  return out;
}

IsotropyResult isotropy_check(const ParametrizedCurve& h, const TropicalForm& base_form) {
  if (h.manifold.kind() != ManifoldKind::product_with_line)
    throw Error(ErrorCode::WrongAmbient, "isotropy needs an ambient of the form B x R");
  const Manifold& base = *h.manifold.base();
  require_form_on(base_form, base.dim());
  if (base_form.degree < 2)
    throw Error(ErrorCode::DimensionMismatch, "isotropy is checked for forms of degree >= 2");
  if (!is_invariant(base_form, base))
    throw Error(ErrorCode::FormNotInvariant, "form is not invariant on the base");
  auto ends = ends_at_infinity(h);  // throws NotHorizontal

  IsotropyResult result;
  result.report.subject = "isotropy";
  result.report.pass("horizontal at infinity", std::to_string(ends.size()) + " ends");
  result.report.pass("form invariant");

  auto basis = deformation_basis(h, DeformationGauge::none);
  result.deformation_dim = basis.size();
  const TropicalForm lifted = base_form.wedge_line();
  const std::size_t p = base_form.degree;

  std::size_t nonzero = 0;
  std::ostringstream bad;
  for (const auto& tuple : combinations(basis.size(), p)) {
    IsotropyEvaluation ev;
    ev.tuple = tuple;
    ev.direct = 0;
    for (const auto& end : ends) {
      std::vector<RatVector> args;
      for (std::size_t i : tuple) args.push_back(project_to_base(basis[i][end.vertex]));
      ev.direct += Rational(end.sign * end.weight) * base_form.evaluate(args);
    }
    std::vector<Deformation> chosen;
    for (std::size_t i : tuple) chosen.push_back(basis[i]);
    LocallyConstantForm contracted = phi_contract(h, lifted, chosen);
    ev.via_contraction = 0;
    for (const auto& end : ends) ev.via_contraction += contracted.values[end.edge];

    if (ev.direct != 0 || ev.via_contraction != 0 || ev.direct != ev.via_contraction) {
      ++nonzero;
      bad << " " << tuple_name(tuple) << "=" << to_string(ev.direct) << "/"
          << to_string(ev.via_contraction);
    }
    result.evaluations.push_back(std::move(ev));
  }
  std::string summary = std::to_string(result.evaluations.size()) + " tuples from a " +
                        std::to_string(basis.size()) + "-dimensional deformation space";
  if (nonzero == 0)
    result.report.pass("wedge values vanish", summary + ", all exactly 0");
  else
    result.report.fail("wedge values vanish",
                       std::to_string(nonzero) + " of " + summary + " nonzero (direct/contraction):" +
                           bad.str());
  return result;
}

IsotropyResult isotropy_check(const ParametrizedCurve& h, std::size_t degree) {
  if (h.manifold.kind() != ManifoldKind::product_with_line)
    throw Error(ErrorCode::WrongAmbient, "isotropy needs an ambient of the form B x R");
  auto forms = invariant_forms(*h.manifold.base(), degree);
  IsotropyResult result;
  result.report.subject = "isotropy";
  if (forms.empty()) {
    ends_at_infinity(h);
    result.report.pass("invariant forms",
                       "no invariant " + std::to_string(degree) + "-forms on the base (rank 0)");
    result.report.skip("wedge values vanish", "vacuous: nothing to evaluate");
    result.deformation_dim = deformation_basis(h, DeformationGauge::none).size();
    return result;
  }
  result.report.pass("invariant forms", "rank " + std::to_string(forms.size()));
  for (std::size_t f = 0; f < forms.size(); ++f) {
    IsotropyResult one = isotropy_check(h, forms[f]);
    result.deformation_dim = one.deformation_dim;
    for (auto& c : one.report.checks) {
      c.name = "form " + std::to_string(f) + ": " + c.name;
      result.report.add(std::move(c));
    }
    for (auto& ev : one.evaluations) result.evaluations.push_back(std::move(ev));
  }
  return result;
}

std::size_t GradedSpace::total_dimension() const {
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.dimension;
  return total;
}

std::size_t GradedSpace::degree() const { return blocks.empty() ? 0 : blocks.front().form.degree; }

Rational GradedSpace::evaluate(std::span<const RatVector> vectors) const {
  const std::size_t total = total_dimension();
  for (const auto& v : vectors)
    if (v.size() != total)
      throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.size()) +
                                                    " differs from total dimension " +
                                                    std::to_string(total));
  Rational value = 0;
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    std::vector<RatVector> parts;
    for (const auto& v : vectors) parts.emplace_back(v.begin() + offset, v.begin() + offset + b.dimension);
    value += Rational(b.sign) * b.form.evaluate(parts);
    offset += b.dimension;
  }
  return value;
}

RoitmanResult roitman_bound_check(const GradedSpace& space, std::span<const RatVector> w) {
  const std::size_t p = space.degree();
  for (const auto& b : space.blocks) {
    require_form_on(b.form, b.dimension);
    if (b.form.degree != p)
      throw Error(ErrorCode::DimensionMismatch, "blocks carry forms of different degrees");
    if (b.sign != 1 && b.sign != -1) throw Error(ErrorCode::DimensionMismatch, "block sign must be +1 or -1");
    if (b.form.is_zero()) throw Error(ErrorCode::NotAForm, "block form must be nonzero");
  }
  const std::size_t total = space.total_dimension();
  for (const auto& v : w)
    if (v.size() != total)
      throw Error(ErrorCode::DimensionMismatch, "vector of W has length " + std::to_string(v.size()) +
                                                    ", expected " + std::to_string(total));

  RoitmanResult r;
  auto basis = span_basis(w, total);
  r.dim_w = basis.size();
  r.bound = total - space.blocks.size();
  r.isotropic = true;
  if (!space.blocks.empty() && p > 0) {
    for (const auto& tuple : combinations(basis.size(), p)) {
      std::vector<RatVector> args;
      for (std::size_t i : tuple) args.push_back(basis[i]);
      Rational value = space.evaluate(args);
      if (value != 0) {
        r.isotropic = false;
        r.witness_tuple = tuple;
        r.witness_value = value;
        break;
      }
    }
  }
  if (r.isotropic) r.satisfied = r.dim_w <= r.bound;
  return r;
}

RoitmanInstance restrict_to_infinity(const ParametrizedCurve& h, const TropicalForm& base_form) {
  auto ends = ends_at_infinity(h);
  const std::size_t b = h.manifold.dim() - 1;
  require_form_on(base_form, b);
  RoitmanInstance inst;
  for (const auto& end : ends)
    for (std::int64_t copy = 0; copy < end.weight; ++copy)
      inst.space.blocks.push_back({b, end.sign, base_form});
  for (const auto& d : deformation_basis(h, DeformationGauge::none)) {
    RatVector v;
    for (const auto& end : ends) {
      RatVector part = project_to_base(d[end.vertex]);
      for (std::int64_t copy = 0; copy < end.weight; ++copy) v.insert(v.end(), part.begin(), part.end());
    }
    inst.w.push_back(std::move(v));
  }
  return inst;
}

}  // namespace troplin
