#include "troplin/embedded.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace troplin {

namespace {

std::string format_vector(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

std::string format_vector(std::span<const Rational> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

bool shapes_ok(const ParametrizedCurve& h) {
  const std::size_t n = h.manifold.dim();
  if (h.positions.size() != h.abstract.vertex_count()) return false;
  if (h.edges.size() != h.abstract.edge_count()) return false;
  for (const auto& p : h.positions)
    if (p.size() != n) return false;
  for (const auto& e : h.edges)
    if (e.direction.size() != n || e.deck.dim() != n || e.deck.linear.rows() != n ||
        e.deck.linear.cols() != n)
      return false;
  return true;
}

}  // namespace

std::vector<std::vector<EdgeGerm>> vertex_germs(const ParametrizedCurve& h) {
  std::vector<std::vector<EdgeGerm>> germs(h.abstract.vertex_count());
  for (std::size_t e = 0; e < h.abstract.edge_count(); ++e) {
    const auto& data = h.edges[e];
    germs[h.abstract.tail_index(e)].push_back({e, data.direction, data.weight});
    if (auto head = h.abstract.head_index(e))
      germs[*head].push_back({e, negated(data.deck.apply_linear(std::span<const Integer>(data.direction))),
                              data.weight});
  }
  return germs;
}

std::vector<IntVector> balancing_residuals(const ParametrizedCurve& h) {
  const std::size_t n = h.manifold.dim();
  std::vector<IntVector> out;
  for (const auto& germs : vertex_germs(h)) {
    IntVector sum(n);
    for (const auto& g : germs)
      for (std::size_t i = 0; i < n; ++i) sum[i] += g.weight * g.outward[i];
    out.push_back(std::move(sum));
  }
  return out;
}

namespace {

struct Piece {
  std::size_t edge;
  RatVector start;
  IntVector direction;
  std::optional<Rational> length;  // nullopt: ray
  std::size_t tail;
  std::optional<std::size_t> head;
};

// Intersections of two segments/rays are allowed only at a vertex shared by
// both edges. Returns a description of the first offending point, if any.
std::optional<std::string> bad_intersection(const ParametrizedCurve& h, const Piece& a,
                                            const Piece& b) {
  const std::size_t n = a.start.size();
  auto shared_vertex_at = [&](std::span<const Rational> x) {
    for (std::size_t v : {a.tail, a.head.value_or(a.tail)}) {
      bool b_touches = v == b.tail || (b.head && v == *b.head);
      if (b_touches && std::equal(x.begin(), x.end(), h.positions[v].begin())) return true;
    }
    return false;
  };
  auto in_range = [](const Rational& s, const std::optional<Rational>& len) {
    return s >= 0 && (!len || s <= *len);
  };

  RatVector da = to_rational(a.direction), db = to_rational(b.direction);
  RatVector diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = b.start[i] - a.start[i];

  // Solve s * da - t * db = diff.
  RatMatrix sys(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    sys(i, 0) = da[i];
    sys(i, 1) = -db[i];
    sys(i, 2) = diff[i];
  }
  RowEchelon e = reduced_row_echelon(sys);
  if (!e.pivots.empty() && e.pivots.back() == 2) return std::nullopt;  // inconsistent

  if (e.pivots.size() == 2) {
    const Rational s = e.reduced(0, 2), t = e.reduced(1, 2);
    if (!in_range(s, a.length) || !in_range(t, b.length)) return std::nullopt;
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a.start[i] + s * da[i];
    if (shared_vertex_at(x)) return std::nullopt;
    return "edges '" + h.abstract.edges()[a.edge].id + "' and '" + h.abstract.edges()[b.edge].id +
           "' meet at " + format_vector(std::span<const Rational>(x));
  }

  // Collinear: compare parameter intervals along da. db = +-da since both are
  // primitive and parallel.
  const int orient = (std::equal(da.begin(), da.end(), db.begin())) ? 1 : -1;
  std::size_t k = 0;
  while (da[k] == 0) ++k;
  const Rational offset = diff[k] / da[k];  // b.start = a.start + offset * da
  // a covers [0, La]; b covers offset + orient * [0, Lb].
  const bool a_ray = !a.length, b_ray = !b.length;
  Rational a_lo = 0;
  Rational b_lo = offset, b_hi = offset;
  bool b_lo_inf = false, b_hi_inf = false;
  if (orient > 0) {
    if (b_ray) b_hi_inf = true; else b_hi = offset + *b.length;
  } else {
    if (b_ray) b_lo_inf = true; else b_lo = offset - *b.length;
  }
  // overlap interval [lo, hi]
  Rational lo = b_lo_inf ? a_lo : std::max(a_lo, b_lo);
  std::optional<Rational> hi;
  if (a_ray && b_hi_inf) hi.reset();
  else if (a_ray) hi = b_hi;
  else if (b_hi_inf) hi = *a.length;
  else hi = std::min(*a.length, b_hi);
  if (hi && *hi < lo) return std::nullopt;
  if (!hi || *hi > lo)
    return "edges '" + h.abstract.edges()[a.edge].id + "' and '" + h.abstract.edges()[b.edge].id +
           "' overlap";
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a.start[i] + lo * da[i];
  if (shared_vertex_at(x)) return std::nullopt;
  return "edges '" + h.abstract.edges()[a.edge].id + "' and '" + h.abstract.edges()[b.edge].id +
         "' touch at " + format_vector(std::span<const Rational>(x));
}

void check_global_embedding(const ParametrizedCurve& h, Report& report) {
  std::vector<Piece> pieces;
  for (std::size_t e = 0; e < h.abstract.edge_count(); ++e) {
    const auto& d = h.edges[e];
    std::optional<Rational> len;
    if (!d.image_length.is_infinite()) len = d.image_length.value();
    pieces.push_back({e, h.positions[h.abstract.tail_index(e)], d.direction, len,
                      h.abstract.tail_index(e), h.abstract.head_index(e)});
  }
  std::ostringstream problems;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      if (auto msg = bad_intersection(h, pieces[i], pieces[j])) problems << *msg << "; ";
  std::map<RatVector, std::size_t> seen;
  for (std::size_t v = 0; v < h.positions.size(); ++v)
    if (auto [it, inserted] = seen.emplace(h.positions[v], v); !inserted)
      problems << "vertices '" << h.abstract.vertices()[it->second] << "' and '"
               << h.abstract.vertices()[v] << "' coincide; ";
  if (problems.str().empty())
    report.pass("embedded", "no intersections away from shared vertices");
  else
    report.fail("embedded", problems.str());
}

bool has_trivial_deck_group(const Manifold& m) {
  if (m.kind() == ManifoldKind::euclidean) return true;
  if (m.kind() == ManifoldKind::product_with_line) return has_trivial_deck_group(*m.base());
  return false;
}

}  // namespace

Report validate_parametrized(const ParametrizedCurve& h) {
  Report report = validate_abstract(h.abstract);
  report.subject = "parametrized curve";
  if (!report.passed()) return report;

  if (!shapes_ok(h)) {
    report.fail("dimensions", "positions, directions and deck elements must all have dimension " +
                                  std::to_string(h.manifold.dim()) + " and match the abstract curve");
    return report;
  }
  report.pass("dimensions");

  std::ostringstream prim, weights, lengths, decks;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    const auto& d = h.edges[e];
    const auto& id = h.abstract.edges()[e].id;
    if (content(d.direction) != 1)
      prim << " '" << id << "' " << format_vector(std::span<const Integer>(d.direction));
    if (d.weight < 1) weights << " '" << id << "' weight " << d.weight;
    const bool infinite_edge = h.abstract.edges()[e].is_infinite();
    if (infinite_edge != d.image_length.is_infinite())
      lengths << " '" << id << "' image length must be " << (infinite_edge ? "inf" : "finite") << ";";
    else if (!infinite_edge) {
      if (d.image_length.value() <= 0)
        lengths << " '" << id << "' non-positive image length;";
      else if (d.image_length.value() != h.abstract.edges()[e].length.value() * d.weight)
        lengths << " '" << id << "' image length " << to_string(d.image_length)
                << " != weight * length " << to_string(h.abstract.edges()[e].length.value() * d.weight)
                << ";";
    }
    if (abs(determinant(d.deck.linear)) != 1) decks << " '" << id << "' not unimodular;";
    if (infinite_edge && !d.deck.is_identity()) decks << " '" << id << "' ray with non-identity deck;";
  }
  if (prim.str().empty()) report.pass("primitive directions");
  else report.fail("primitive directions", "not primitive:" + prim.str());
  if (weights.str().empty()) report.pass("weights");
  else report.fail("weights", "weights must be >= 1:" + weights.str());
  if (lengths.str().empty()) report.pass("image lengths");
  else report.fail("image lengths", lengths.str());
  if (decks.str().empty()) report.pass("deck elements");
  else report.fail("deck elements", decks.str());
  if (!report.passed()) return report;

  std::ostringstream positions;
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    auto head = h.abstract.head_index(e);
    if (!head) continue;
    const auto& d = h.edges[e];
    RatVector end = h.positions[h.abstract.tail_index(e)];
    for (std::size_t i = 0; i < end.size(); ++i) end[i] += d.image_length.value() * Rational(d.direction[i]);
    RatVector arrived = d.deck.apply(end);
    if (arrived != h.positions[*head])
      positions << " '" << h.abstract.edges()[e].id << "' arrives at "
                << format_vector(std::span<const Rational>(arrived)) << " instead of "
                << format_vector(std::span<const Rational>(h.positions[*head])) << ";";
  }
  if (positions.str().empty()) report.pass("position consistency");
  else report.fail("position consistency", positions.str());

  auto residuals = balancing_residuals(h);
  for (std::size_t v = 0; v < residuals.size(); ++v) {
    const std::string name = "balancing at '" + h.abstract.vertices()[v] + "'";
    if (is_zero(residuals[v]))
      report.pass(name, "residual 0");
    else
      report.fail(name, "residual " + format_vector(std::span<const Integer>(residuals[v])));
  }

  auto germs = vertex_germs(h);
  std::ostringstream injectivity;
  for (std::size_t v = 0; v < germs.size(); ++v)
    for (std::size_t i = 0; i < germs[v].size(); ++i)
      for (std::size_t j = i + 1; j < germs[v].size(); ++j)
        if (germs[v][i].outward == germs[v][j].outward)
          injectivity << " at '" << h.abstract.vertices()[v] << "' edges '"
                      << h.abstract.edges()[germs[v][i].edge].id << "' and '"
                      << h.abstract.edges()[germs[v][j].edge].id << "' leave along "
                      << format_vector(std::span<const Integer>(germs[v][i].outward)) << ";";
  if (injectivity.str().empty()) report.pass("local injectivity");
  else report.fail("local injectivity", injectivity.str());

  if (has_trivial_deck_group(h.manifold))
    check_global_embedding(h, report);
  else
    report.skip("embedded", "not checked in quotients; immersion and local injectivity verified");
  return report;
}

void require_valid(const ParametrizedCurve& h) {
  Report r = validate_parametrized(h);
  if (r.passed()) return;
  std::string msg;
  for (const auto* c : r.failures()) msg += c->name + ": " + c->detail + " ";
  throw Error(ErrorCode::InvalidCurve, msg);
}

ZeroCycle ZeroCycle::canonical(std::vector<CycleTerm> terms) {
  std::map<RatVector, std::int64_t> merged;
  for (auto& t : terms) merged[std::move(t.point)] += t.multiplicity;
  ZeroCycle z;
  for (auto& [p, m] : merged)
    if (m != 0) z.terms_.push_back({p, m});
  return z;
}

ZeroCycle ZeroCycle::from_terms(const Manifold& m, std::vector<CycleTerm> terms) {
  for (auto& t : terms) t.point = reduce_point(m, t.point);
  return canonical(std::move(terms));
}

std::int64_t ZeroCycle::degree() const {
  std::int64_t d = 0;
  for (const auto& t : terms_) d += t.multiplicity;
  return d;
}

std::int64_t ZeroCycle::multiplicity_at(std::span<const Rational> point) const {
  for (const auto& t : terms_)
    if (std::equal(t.point.begin(), t.point.end(), point.begin(), point.end())) return t.multiplicity;
  return 0;
}

ZeroCycle ZeroCycle::operator-() const {
  ZeroCycle z = *this;
  for (auto& t : z.terms_) t.multiplicity = -t.multiplicity;
  return z;
}

ZeroCycle operator+(const ZeroCycle& a, const ZeroCycle& b) {
  std::vector<CycleTerm> all = a.terms_;
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return ZeroCycle::canonical(std::move(all));
}

RatVector flatten(const Deformation& d) {
  RatVector out;
  for (const auto& v : d) out.insert(out.end(), v.begin(), v.end());
  return out;
}

Deformation unflatten(std::span<const Rational> flat, std::size_t vertices, std::size_t dim) {
  if (flat.size() != vertices * dim)
    throw Error(ErrorCode::DimensionMismatch, "flat deformation has the wrong length");
  Deformation d(vertices);
  for (std::size_t v = 0; v < vertices; ++v) d[v].assign(flat.begin() + v * dim, flat.begin() + (v + 1) * dim);
  return d;
}

namespace {

// Append rows c . (A u_from - u_to) = 0 for every covector c in `covectors`.
void add_transport_rows(IntMatrix& rows, std::size_t n, std::size_t vertices, std::size_t from,
                        std::size_t to, const IntMatrix& a, const std::vector<IntVector>& covectors) {
  for (const auto& c : covectors) {
    IntVector row(vertices * n);
    for (std::size_t j = 0; j < n; ++j) {
      Integer ca = 0;
      for (std::size_t i = 0; i < n; ++i) ca += c[i] * a(i, j);
      row[from * n + j] += ca;
      row[to * n + j] -= c[j];
    }
    rows.append_row(row);
  }
}

std::vector<IntVector> annihilator(std::span<const Integer> direction) {
  IntMatrix m(1, direction.size());
  for (std::size_t i = 0; i < direction.size(); ++i) m(0, i) = direction[i];
  return integer_kernel(m);
}

struct WorkEdge {
  std::size_t tail;
  std::optional<std::size_t> head;
  IntMatrix linear;
  IntVector direction;
  bool alive = true;
};

// Pins every removable 2-valent vertex to a neighbour, erasing it from a
// working copy of the graph as it goes.
void add_smoothing_rows(const ParametrizedCurve& h, IntMatrix& rows) {
  const std::size_t n = h.manifold.dim();
  const std::size_t nv = h.abstract.vertex_count();
  std::vector<WorkEdge> work;
  for (std::size_t e = 0; e < h.abstract.edge_count(); ++e)
    work.push_back({h.abstract.tail_index(e), h.abstract.head_index(e), h.edges[e].deck.linear,
                    h.edges[e].direction, true});

  auto flip = [](WorkEdge& w) {
    // tail -> head becomes head -> tail in the head's chart.
    IntVector arrival = w.linear.apply(w.direction);
    w.linear = inverse_unimodular(w.linear);
    w.direction = negated(std::move(arrival));
    std::swap(w.tail, *w.head);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < nv; ++v) {
      std::vector<std::size_t> ends;
      for (std::size_t e = 0; e < work.size(); ++e) {
        if (!work[e].alive) continue;
        if (work[e].tail == v) ends.push_back(e);
        if (work[e].head && *work[e].head == v) ends.push_back(e);
      }
      if (ends.size() != 2 || ends[0] == ends[1]) continue;
      std::size_t first = ends[0], second = ends[1];
      if (work[first].head == std::nullopt) std::swap(first, second);
      if (!work[first].head) continue;  // both semi-infinite

      WorkEdge in = work[first];
      if (in.tail == v) flip(in);  // now in: a -> v
      WorkEdge out = work[second];
      if (out.tail != v) flip(out);  // now out: v -> b (or boundary)

      // u_v and the transport of u_a agree along the edge line.
      IntVector arrival = in.linear.apply(in.direction);
      std::size_t k = 0;
      while (arrival[k] == 0) ++k;
      IntVector c(n);
      c[k] = 1;
      add_transport_rows(rows, n, nv, in.tail, v, in.linear, {c});

      work[first].alive = work[second].alive = false;
      work.push_back({in.tail, out.head, out.linear * in.linear, in.direction, true});
      changed = true;
    }
  }
}

}  // namespace

IntMatrix deformation_constraints(const ParametrizedCurve& h, DeformationGauge gauge) {
  require_valid(h);
  const std::size_t n = h.manifold.dim();
  const std::size_t nv = h.abstract.vertex_count();
  IntMatrix rows(0, nv * n);
  for (std::size_t e = 0; e < h.abstract.edge_count(); ++e) {
    auto head = h.abstract.head_index(e);
    if (!head) continue;
    const auto& d = h.edges[e];
    IntVector transported = d.deck.linear.apply(d.direction);
    add_transport_rows(rows, n, nv, h.abstract.tail_index(e), *head, d.deck.linear,
                       annihilator(transported));
  }
  if (gauge == DeformationGauge::smoothed) add_smoothing_rows(h, rows);
  return rows;
}

std::vector<Deformation> deformation_basis(const ParametrizedCurve& h, DeformationGauge gauge) {
  const std::size_t n = h.manifold.dim();
  const std::size_t nv = h.abstract.vertex_count();
  IntMatrix rows = deformation_constraints(h, gauge);
  std::vector<Deformation> out;
  if (rows.rows() == 0) {
    for (std::size_t i = 0; i < nv * n; ++i) {
      RatVector flat(nv * n);
      flat[i] = 1;
      out.push_back(unflatten(flat, nv, n));
    }
    return out;
  }
  for (const auto& k : integer_kernel(rows)) out.push_back(unflatten(to_rational(k), nv, n));
  return out;
}

bool is_horizontal_at_infinity(const ParametrizedCurve& h) {
  if (h.manifold.kind() != ManifoldKind::product_with_line)
    throw Error(ErrorCode::WrongAmbient, "horizontality needs an ambient of the form B x R");
  const std::size_t n = h.manifold.dim();
  for (std::size_t e = 0; e < h.abstract.edge_count(); ++e) {
    if (!h.abstract.edges()[e].is_infinite()) continue;
    const auto& d = h.edges[e].direction;
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (d[i] != 0) return false;
    if (abs(d[n - 1]) != 1) return false;
  }
  return true;
}

std::vector<CurveEnd> ends_at_infinity(const ParametrizedCurve& h) {
  if (!is_horizontal_at_infinity(h))
    throw Error(ErrorCode::NotHorizontal, "some semi-infinite edge is not vertical");
  const Manifold& base = *h.manifold.base();
  const std::size_t n = h.manifold.dim();
  std::vector<CurveEnd> out;
  for (std::size_t e = 0; e < h.abstract.edge_count(); ++e) {
    if (!h.abstract.edges()[e].is_infinite()) continue;
    const std::size_t v = h.abstract.tail_index(e);
    const auto& p = h.positions[v];
    out.push_back({e, v, h.edges[e].direction[n - 1] > 0 ? 1 : -1, h.edges[e].weight,
                   reduce_point(base, std::span<const Rational>(p).first(n - 1))});
  }
  return out;
}

EvaluationAtInfinity evaluate_at_infinity(const ParametrizedCurve& h) {
  const Manifold& base = h.manifold.kind() == ManifoldKind::product_with_line ? *h.manifold.base()
                                                                              : h.manifold;
  std::vector<CycleTerm> minus, plus;
  for (auto& end : ends_at_infinity(h))
    (end.sign > 0 ? plus : minus).push_back({std::move(end.base_point), end.weight});
  return {ZeroCycle::from_terms(base, std::move(minus)), ZeroCycle::from_terms(base, std::move(plus))};
}

ZeroCycle boundary_zero_cycle(const ParametrizedCurve& h) {
  auto ev = evaluate_at_infinity(h);
  return ev.plus - ev.minus;
}

}  // namespace troplin
