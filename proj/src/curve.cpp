#include "troplin/curve.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace troplin {

const Rational& EdgeLength::value() const {
  if (!value_) throw Error(ErrorCode::InvalidCurve, "infinite edge has no finite length");
  return *value_;
}

std::string to_string(const EdgeLength& length) {
  return length.is_infinite() ? "inf" : to_string(length.value());
}

EdgeLength parse_length(std::string_view text) {
  if (text == "inf" || text == "infinity") return EdgeLength::infinite();
  return EdgeLength::finite(parse_rational(text));
}

std::optional<std::size_t> AbstractCurve::vertex_index(std::string_view id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> AbstractCurve::edge_index(std::string_view id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return i;
  return std::nullopt;
}

std::size_t AbstractCurve::tail_index(std::size_t edge) const {
  auto idx = vertex_index(edges_.at(edge).tail);
  if (!idx)
    throw Error(ErrorCode::InvalidCurve, "edge '" + edges_[edge].id + "' has unknown tail");
  return *idx;
}

std::optional<std::size_t> AbstractCurve::head_index(std::size_t edge) const {
  const auto& e = edges_.at(edge);
  if (!e.head) return std::nullopt;
  auto idx = vertex_index(*e.head);
  if (!idx) throw Error(ErrorCode::InvalidCurve, "edge '" + e.id + "' has unknown head");
  return idx;
}

std::vector<std::size_t> AbstractCurve::valences() const {
  std::vector<std::size_t> val(vertices_.size(), 0);
  for (const auto& e : edges_) {
    if (auto t = vertex_index(e.tail)) ++val[*t];
    if (e.head)
      if (auto h = vertex_index(*e.head)) ++val[*h];
  }
  return val;
}

Report validate_abstract(const AbstractCurve& curve) {
  Report report;
  report.subject = "abstract curve";

  std::set<std::string> seen;
  std::ostringstream dup;
  for (const auto& v : curve.vertices())
    if (!seen.insert(v).second) dup << " vertex '" << v << "'";
  std::set<std::string> seen_edges;
  for (const auto& e : curve.edges())
    if (!seen_edges.insert(e.id).second) dup << " edge '" << e.id << "'";
  if (dup.str().empty())
    report.pass("unique ids");
  else
    report.fail("unique ids", "duplicated:" + dup.str());

  std::ostringstream dangling;
  for (const auto& e : curve.edges()) {
    if (!curve.vertex_index(e.tail))
      dangling << " edge '" << e.id << "' tail '" << e.tail << "'";
    if (e.head && !curve.vertex_index(*e.head))
      dangling << " edge '" << e.id << "' head '" << *e.head << "'";
  }
  if (dangling.str().empty())
    report.pass("endpoints");
  else
    report.fail("endpoints", "unknown vertex ids:" + dangling.str());

  std::ostringstream lengths;
  for (const auto& e : curve.edges()) {
    if (e.is_infinite() && !e.length.is_infinite())
      lengths << " edge '" << e.id << "' ends at infinity but has finite length;";
    if (!e.is_infinite() && e.length.is_infinite())
      lengths << " edge '" << e.id << "' joins two vertices but has infinite length;";
    if (!e.length.is_infinite() && e.length.value() <= 0)
      lengths << " edge '" << e.id << "' has non-positive length;";
  }
  if (lengths.str().empty())
    report.pass("edge lengths");
  else
    report.fail("edge lengths", lengths.str());

  auto val = curve.valences();
  std::ostringstream low;
  for (std::size_t v = 0; v < val.size(); ++v)
    if (val[v] < 2)
      low << " '" << curve.vertices()[v] << "' (" << val[v] << "-valent)";
  if (low.str().empty())
    report.pass("valence", "no vertex of valence below 2");
  else
    report.fail("valence", "vertices of valence below 2:" + low.str());

  if (curve.vertices().empty() && !curve.edges().empty())
    report.fail("nonempty", "edges without vertices");
  return report;
}

void require_valid(const AbstractCurve& curve) {
  Report r = validate_abstract(curve);
  if (r.passed()) return;
  std::string msg;
  for (const auto* c : r.failures()) msg += c->name + ": " + c->detail + "; ";
  throw Error(ErrorCode::InvalidCurve, msg);
}

RatMatrix relative_boundary_matrix(const AbstractCurve& curve) {
  RatMatrix d(curve.vertex_count(), curve.edge_count());
  for (std::size_t e = 0; e < curve.edge_count(); ++e) {
    d(curve.tail_index(e), e) -= 1;
    if (auto h = curve.head_index(e)) d(*h, e) += 1;
  }
  return d;
}

std::vector<RatVector> relative_h1_basis(const AbstractCurve& curve) {
  require_valid(curve);
  return rational_kernel(relative_boundary_matrix(curve));
}

namespace {

// One row per vertex: coefficient of value_e is the outward sign of each end
// of e at that vertex (+1 at the tail, -1 at the head).
RatMatrix vertex_equations(const AbstractCurve& curve) {
  RatMatrix f(curve.vertex_count(), curve.edge_count());
  for (std::size_t e = 0; e < curve.edge_count(); ++e) {
    f(curve.tail_index(e), e) += 1;
    if (auto h = curve.head_index(e)) f(*h, e) -= 1;
  }
  return f;
}

}  // namespace

RatVector vertex_residuals(const AbstractCurve& curve, const LocallyConstantForm& form) {
  if (form.values.size() != curve.edge_count())
    throw Error(ErrorCode::DimensionMismatch, "form needs one value per edge");
  return vertex_equations(curve).apply(form.values);
}

std::vector<LocallyConstantForm> locally_constant_forms(const AbstractCurve& curve) {
  require_valid(curve);
  std::vector<LocallyConstantForm> out;
  for (auto& v : rational_kernel(vertex_equations(curve))) out.push_back({std::move(v)});
  return out;
}

RatVector eta(const AbstractCurve& curve, const LocallyConstantForm& form) {
  RatVector residual = vertex_residuals(curve, form);
  for (std::size_t v = 0; v < residual.size(); ++v)
    if (residual[v] != 0)
      throw Error(ErrorCode::NotAForm, "vertex equation fails at '" + curve.vertices()[v] +
                                           "' (residual " + to_string(residual[v]) + ")");
  // With tail->head generators u_e the chain coefficient of e is alpha_e(u_e).
  return form.values;
}

std::vector<std::vector<std::size_t>> connected_components(const AbstractCurve& curve) {
  std::vector<std::size_t> parent(curve.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < curve.edge_count(); ++e)
    if (auto h = curve.head_index(e)) parent[find(curve.tail_index(e))] = find(*h);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(curve.vertex_count(), static_cast<std::size_t>(-1));
  for (std::size_t v = 0; v < curve.vertex_count(); ++v) {
    std::size_t r = find(v);
    if (slot[r] == static_cast<std::size_t>(-1)) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(v);
  }
  return out;
}

}  // namespace troplin
