#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "troplin/curve.hpp"
#include "troplin/manifold.hpp"
#include "troplin/report.hpp"

namespace troplin {

/// Integer-affine image of one edge. The direction is primitive and lives in
/// the tail vertex's chart; `deck` carries the tail chart into the head chart,
/// so that deck(position(tail) + image_length * direction) = position(head).
struct EdgeEmbedding {
  IntVector direction;
  std::int64_t weight = 1;
  EdgeLength image_length = EdgeLength::infinite();
  DeckElement deck;
  /// Generator word the deck element was read from; empty if given explicitly.
  std::string deck_word;

  friend bool operator==(const EdgeEmbedding&, const EdgeEmbedding&) = default;
};

/// An abstract curve together with lifted vertex positions and per-edge
/// embedding data in a quotient manifold.
struct ParametrizedCurve {
  Manifold manifold;
  AbstractCurve abstract;
  std::vector<RatVector> positions;  ///< indexed like abstract.vertices()
  std::vector<EdgeEmbedding> edges;  ///< indexed like abstract.edges()

  friend bool operator==(const ParametrizedCurve&, const ParametrizedCurve&) = default;
};

/// One end of an edge at a vertex, with its outward primitive direction
/// expressed in that vertex's chart.
struct EdgeGerm {
  std::size_t edge;
  IntVector outward;
  std::int64_t weight;
};

/// Germs at each vertex; a self-loop contributes two.
std::vector<std::vector<EdgeGerm>> vertex_germs(const ParametrizedCurve& h);

/// Weighted sum of outward directions at each vertex.
std::vector<IntVector> balancing_residuals(const ParametrizedCurve& h);

Report validate_parametrized(const ParametrizedCurve& h);

/// Throws InvalidCurve naming the failed checks.
void require_valid(const ParametrizedCurve& h);

/// A finite formal sum of canonical points with nonzero multiplicities,
/// sorted by point.
struct CycleTerm {
  RatVector point;
  std::int64_t multiplicity = 0;
  friend bool operator==(const CycleTerm&, const CycleTerm&) = default;
};

class ZeroCycle {
 public:
  ZeroCycle() = default;
  /// Reduces every point in `m`, merges duplicates and drops zero terms.
  static ZeroCycle from_terms(const Manifold& m, std::vector<CycleTerm> terms);

  const std::vector<CycleTerm>& terms() const noexcept { return terms_; }
  std::int64_t degree() const;
  bool empty() const noexcept { return terms_.empty(); }
  std::int64_t multiplicity_at(std::span<const Rational> canonical_point) const;

  ZeroCycle operator-() const;
  friend ZeroCycle operator+(const ZeroCycle& a, const ZeroCycle& b);
  friend ZeroCycle operator-(const ZeroCycle& a, const ZeroCycle& b) { return a + (-b); }
  friend bool operator==(const ZeroCycle&, const ZeroCycle&) = default;

 private:
  static ZeroCycle canonical(std::vector<CycleTerm> terms);
  std::vector<CycleTerm> terms_;
};

/// Deformations are per-vertex tangent vectors, each in its vertex's chart.
using Deformation = std::vector<RatVector>;

enum class DeformationGauge {
  /// Raw global sections: every vertex moves freely subject to the edge
  /// conditions.
  none,
  /// Removable 2-valent vertices (those that can be erased by merging their
  /// two edges) are pinned to a neighbour, so the space does not grow when an
  /// edge is subdivided.
  smoothed,
};

/// Basis of the deformation space with edge directions fixed: for every finite
/// edge, A * u_tail - u_head is parallel to the transported direction.
std::vector<Deformation> deformation_basis(const ParametrizedCurve& h,
                                           DeformationGauge gauge = DeformationGauge::smoothed);

/// Dense constraint matrix whose kernel is the deformation space, unknowns
/// ordered vertex-major.
IntMatrix deformation_constraints(const ParametrizedCurve& h, DeformationGauge gauge);

RatVector flatten(const Deformation& d);
Deformation unflatten(std::span<const Rational> flat, std::size_t vertices, std::size_t dim);

/// Curves in B x R: every semi-infinite edge is parallel to the R factor.
/// Throws WrongAmbient unless the manifold is a product with a line.
bool is_horizontal_at_infinity(const ParametrizedCurve& h);

/// A semi-infinite edge of a horizontal curve. sign is +1 for ends going to
/// +infinity and -1 for ends going to -infinity.
struct CurveEnd {
  std::size_t edge;
  std::size_t vertex;
  int sign;
  std::int64_t weight;
  RatVector base_point;  ///< canonical point of B
};

std::vector<CurveEnd> ends_at_infinity(const ParametrizedCurve& h);

struct EvaluationAtInfinity {
  ZeroCycle minus;
  ZeroCycle plus;
};

/// Throws NotHorizontal.
EvaluationAtInfinity evaluate_at_infinity(const ParametrizedCurve& h);

/// plus - minus as a 0-cycle on B; always of degree 0.
ZeroCycle boundary_zero_cycle(const ParametrizedCurve& h);

}  // namespace troplin
