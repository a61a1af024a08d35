#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "troplin/linalg.hpp"
#include "troplin/report.hpp"

namespace troplin {

/// Positive rational length, or infinite for semi-infinite edges.
class EdgeLength {
 public:
  static EdgeLength infinite() { return EdgeLength(); }
  static EdgeLength finite(Rational value) { return EdgeLength(std::move(value)); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  const Rational& value() const;

  friend bool operator==(const EdgeLength&, const EdgeLength&) = default;

 private:
  EdgeLength() = default;
  explicit EdgeLength(Rational v) : value_(std::move(v)) {}
  std::optional<Rational> value_;
};

std::string to_string(const EdgeLength& length);
EdgeLength parse_length(std::string_view text);

/// Edge oriented tail -> head. A missing head is a boundary point at infinity.
struct AbstractEdge {
  std::string id;
  std::string tail;
  std::optional<std::string> head;
  EdgeLength length = EdgeLength::infinite();

  bool is_infinite() const noexcept { return !head.has_value(); }
  friend bool operator==(const AbstractEdge&, const AbstractEdge&) = default;
};

/// Metric graph with finite and semi-infinite edges.
class AbstractCurve {
 public:
  AbstractCurve() = default;
  AbstractCurve(std::vector<std::string> vertices, std::vector<AbstractEdge> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {}

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<AbstractEdge>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::optional<std::size_t> vertex_index(std::string_view id) const;
  std::optional<std::size_t> edge_index(std::string_view id) const;

  /// Vertex index of the tail; throws InvalidCurve on dangling ids.
  std::size_t tail_index(std::size_t edge) const;
  /// Vertex index of the head, or nullopt for boundary points.
  std::optional<std::size_t> head_index(std::size_t edge) const;

  /// Number of edge ends at each vertex; a self-loop counts twice.
  std::vector<std::size_t> valences() const;

  friend bool operator==(const AbstractCurve&, const AbstractCurve&) = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<AbstractEdge> edges_;
};

Report validate_abstract(const AbstractCurve& curve);

/// Throws InvalidCurve listing the failed checks.
void require_valid(const AbstractCurve& curve);

/// Boundary map of the relative chain complex, |V| x |E|:
/// column e is 1_head - 1_tail with boundary points dropped.
RatMatrix relative_boundary_matrix(const AbstractCurve& curve);

/// Basis of H_1(closure, boundary; Q) = ker of the relative boundary map.
std::vector<RatVector> relative_h1_basis(const AbstractCurve& curve);

/// Edge values alpha_e(u_e) of a locally constant 1-form, u_e the tail->head
/// primitive tangent.
struct LocallyConstantForm {
  RatVector values;
  friend bool operator==(const LocallyConstantForm&, const LocallyConstantForm&) = default;
};

/// Sum over edge ends at each vertex of (outward sign) * value; all zero iff
/// the assignment is a global section.
RatVector vertex_residuals(const AbstractCurve& curve, const LocallyConstantForm& form);

std::vector<LocallyConstantForm> locally_constant_forms(const AbstractCurve& curve);

/// The chain sum_e value_e * e. Throws NotAForm if a vertex equation fails.
RatVector eta(const AbstractCurve& curve, const LocallyConstantForm& form);

/// Connected components as lists of vertex indices.
std::vector<std::vector<std::size_t>> connected_components(const AbstractCurve& curve);

}  // namespace troplin
