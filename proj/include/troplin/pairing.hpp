#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "troplin/curve.hpp"
#include "troplin/embedded.hpp"
#include "troplin/manifold.hpp"
#include "troplin/report.hpp"

namespace troplin {

/// Contracts `form` (degree k+1) with k deformations and each edge's weighted
/// direction: value_e = w_e * form(D_1(tail), ..., D_k(tail), direction_e).
/// The result always satisfies the vertex equations; that is asserted.
/// Throws DimensionMismatch, NotADeformation, FormNotInvariant.
LocallyConstantForm phi_contract(const ParametrizedCurve& h, const TropicalForm& form,
                                 std::span<const Deformation> deformations);

/// Whether d moves every edge parallel to itself (ungauged condition).
bool is_deformation(const ParametrizedCurve& h, const Deformation& d);

struct IsotropyEvaluation {
  std::vector<std::size_t> tuple;  ///< indices into the deformation basis
  Rational direct;                 ///< sum over ends of sign * weight * form
  Rational via_contraction;        ///< ev of the contraction with form ^ dt
};

struct IsotropyResult {
  Report report;
  std::size_t deformation_dim = 0;
  std::vector<IsotropyEvaluation> evaluations;
};

/// Evaluates the signed, weighted form at infinity on every p-tuple of the
/// curve's deformation basis and checks each value is exactly zero.
/// Throws WrongAmbient, NotHorizontal, FormNotInvariant, DimensionMismatch.
IsotropyResult isotropy_check(const ParametrizedCurve& h, const TropicalForm& base_form);

/// Same, over every element of the invariant p-form basis of the base. A base
/// without invariant p-forms passes vacuously, which is reported.
IsotropyResult isotropy_check(const ParametrizedCurve& h, std::size_t degree);

struct GradedBlock {
  std::size_t dimension = 0;
  int sign = 1;
  TropicalForm form;
};

/// Direct sum of blocks, each with a signed p-form. The total form is
/// sum_j sign_j * (pullback of form_j along the projection to block j).
struct GradedSpace {
  std::vector<GradedBlock> blocks;

  std::size_t total_dimension() const;
  std::size_t degree() const;
  /// Throws DimensionMismatch.
  Rational evaluate(std::span<const RatVector> vectors) const;
};

struct RoitmanResult {
  bool isotropic = false;
  std::size_t dim_w = 0;
  /// sum of block dimensions minus the number of blocks
  std::size_t bound = 0;
  /// Only meaningful when isotropic.
  std::optional<bool> satisfied;
  /// First basis tuple with nonzero value, when not isotropic.
  std::vector<std::size_t> witness_tuple;
  Rational witness_value;
};

/// Throws DimensionMismatch, NotAForm (zero block form).
RoitmanResult roitman_bound_check(const GradedSpace& space, std::span<const RatVector> w);

struct RoitmanInstance {
  GradedSpace space;
  std::vector<RatVector> w;
};

/// One block per weight copy of every end at infinity, carrying base_form with
/// the end's sign; W is the deformation basis restricted to those ends.
RoitmanInstance restrict_to_infinity(const ParametrizedCurve& h, const TropicalForm& base_form);

}  // namespace troplin
