#include "troplin/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace troplin::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

std::int64_t int64_of(const Json& j, const std::string& where) {
  Integer z = parse_integer_json(j);
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    fail(where, "integer out of range");
  return static_cast<std::int64_t>(z);
}

IntMatrix parse_int_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a matrix as a list of rows");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(parse_int_vector(r));
  try {
    return IntMatrix::from_rows(rows);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i)));
  return rows;
}

}  // namespace

Json rational_json(const Rational& r) { return to_string(r); }

Rational parse_rational_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw Error(ErrorCode::ParseError, "expected a rational \"p/q\", got " + j.dump());
}

Json integer_json(const Integer& z) {
  if (z <= std::numeric_limits<std::int64_t>::max() && z >= std::numeric_limits<std::int64_t>::min())
    return static_cast<std::int64_t>(z);
  return to_string(z);
}

Integer parse_integer_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    Rational r = parse_rational(j.get<std::string>());
    if (boost::multiprecision::denominator(r) != 1)
      throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
    return boost::multiprecision::numerator(r);
  }
  throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

Json vector_json(std::span<const Rational> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

RatVector parse_rat_vector(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a list of rationals, got " + j.dump());
  RatVector v;
  for (const auto& x : j) v.push_back(parse_rational_json(x));
  return v;
}

Json vector_json(std::span<const Integer> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

IntVector parse_int_vector(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a list of integers, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(parse_integer_json(x));
  return v;
}

Json to_json(const Manifold& m) {
  Json j;
  j["kind"] = std::string(to_string(m.kind()));
  j["dim"] = m.dim();
  Json gens = Json::array();
  for (const auto& g : m.generators()) {
    Json e{{"name", g.name}};
    e.update(to_json(g.element));
    gens.push_back(e);
  }
  j["generators"] = gens;
  if (m.kind() == ManifoldKind::klein)
    j["klein"] = {{"x0", rational_json(m.klein_parameters()->x0)},
                  {"y0", rational_json(m.klein_parameters()->y0)}};
  if (m.kind() == ManifoldKind::product_with_line) j["base"] = to_json(*m.base());
  return j;
}

namespace {

std::vector<NamedGenerator> parse_generators(const Json& j, const std::string& where) {
  std::vector<NamedGenerator> gens;
  const Json& list = field(j, "generators", where);
  if (!list.is_array()) fail(where + ".generators", "expected a list");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = where + ".generators[" + std::to_string(i) + "]";
    const Json& g = list[i];
    const std::string name = g.contains("name") ? string_field(g, "name", w) : "";
    gens.push_back({name, {parse_int_matrix(field(g, "matrix", w), w + ".matrix"),
                           parse_rat_vector(field(g, "translation", w))}});
  }
  return gens;
}

// Generators listed alongside a built-in kind must agree with the built ones.
Manifold check_listed_generators(Manifold m, const Json& j, const std::string& where) {
  if (!j.contains("generators")) return m;
  auto listed = parse_generators(j, where);
  if (listed.size() != m.generators().size()) fail(where + ".generators", "wrong number of generators");
  for (std::size_t i = 0; i < listed.size(); ++i)
    if (listed[i].element != m.generators()[i].element ||
        (!listed[i].name.empty() && listed[i].name != m.generators()[i].name))
      fail(where + ".generators", "generator " + std::to_string(i) + " differs from the " +
                                      std::string(to_string(m.kind())) + " presentation");
  return m;
}

}  // namespace

Manifold parse_manifold(const Json& j) {
  const std::string where = "manifold";
  ManifoldKind kind;
  try {
    kind = parse_manifold_kind(string_field(j, "kind", where));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(where, e.what());
  }
  Manifold m;
  switch (kind) {
    case ManifoldKind::euclidean:
      m = make_euclidean(static_cast<std::size_t>(int64_of(field(j, "dim", where), where + ".dim")));
      break;
    case ManifoldKind::torus: {
      std::vector<RatVector> lattice;
      if (j.contains("lattice")) {
        for (const auto& v : field(j, "lattice", where)) lattice.push_back(parse_rat_vector(v));
      } else {
        for (const auto& g : parse_generators(j, where)) {
          if (g.element.linear != IntMatrix::identity(g.element.dim()))
            fail(where + ".generators", "torus generators must be translations");
          lattice.push_back(g.element.translation);
        }
      }
      m = make_torus(lattice);
      break;
    }
    case ManifoldKind::klein: {
      const Json& params = j.contains("klein") ? j["klein"] : j;
      m = make_klein(parse_rational_json(field(params, "x0", where)),
                     parse_rational_json(field(params, "y0", where)));
      break;
    }
    case ManifoldKind::product_with_line:
      m = product_with_line(parse_manifold(field(j, "base", where)));
      break;
    case ManifoldKind::general: {
      const auto n = static_cast<std::size_t>(int64_of(field(j, "dim", where), where + ".dim"));
      return Manifold::general(n, parse_generators(j, where));
    }
  }
  if (j.contains("dim") && static_cast<std::size_t>(int64_of(j["dim"], where + ".dim")) != m.dim())
    fail(where + ".dim", "does not match the " + std::string(to_string(kind)) + " presentation");
  return check_listed_generators(std::move(m), j, where);
}

bool is_manifold(const Json& j) { return j.is_object() && j.contains("kind"); }

Json to_json(const DeckElement& g) {
  return {{"matrix", matrix_json(g.linear)}, {"translation", vector_json(g.translation)}};
}

DeckElement parse_deck(const Json& j, const Manifold& m, std::string* word) {
  if (j.is_string()) {
    if (word) *word = j.get<std::string>();
    return m.resolve_word(j.get<std::string>());
  }
  if (word) word->clear();
  DeckElement g{parse_int_matrix(field(j, "matrix", "deck"), "deck.matrix"),
                parse_rat_vector(field(j, "translation", "deck"))};
  if (g.linear.rows() != m.dim() || g.linear.cols() != m.dim() || g.translation.size() != m.dim())
    fail("deck", "dimension differs from the manifold");
  return g;
}

namespace {

Json abstract_edge_json(const AbstractEdge& e) {
  Json j{{"id", e.id}, {"tail", e.tail}};
  if (e.head)
    j["head"] = *e.head;
  else
    j["boundary"] = true;
  j["length"] = to_string(e.length);
  return j;
}

AbstractEdge parse_abstract_edge(const Json& j, bool length_required, const std::string& where) {
  AbstractEdge e;
  e.id = string_field(j, "id", where);
  e.tail = string_field(j, "tail", where);
  const bool boundary = j.contains("boundary") && j["boundary"].is_boolean() && j["boundary"].get<bool>();
  if (j.contains("head") && !j["head"].is_null()) {
    if (boundary) fail(where, "edge '" + e.id + "' has both a head and \"boundary\": true");
    e.head = string_field(j, "head", where);
  } else if (!boundary) {
    fail(where, "edge '" + e.id + "' needs a head or \"boundary\": true");
  }
  if (j.contains("length")) {
    const Json& l = j["length"];
    e.length = l.is_string() ? parse_length(l.get<std::string>()) : EdgeLength::finite(parse_rational_json(l));
  } else if (!e.head) {
    e.length = EdgeLength::infinite();
  } else if (length_required) {
    fail(where, "edge '" + e.id + "' needs a length");
  }
  return e;
}

std::vector<std::string> parse_vertex_ids(const Json& j) {
  std::vector<std::string> out;
  const Json& v = field(j, "vertices", "curve");
  if (!v.is_array()) fail("curve.vertices", "expected a list of ids");
  for (const auto& id : v) {
    if (!id.is_string()) fail("curve.vertices", "vertex ids must be strings");
    out.push_back(id.get<std::string>());
  }
  return out;
}

}  // namespace

Json to_json(const AbstractCurve& c) {
  Json edges = Json::array();
  for (const auto& e : c.edges()) edges.push_back(abstract_edge_json(e));
  return {{"vertices", c.vertices()}, {"edges", edges}};
}

AbstractCurve parse_abstract_curve(const Json& j) {
  auto vertices = parse_vertex_ids(j);
  std::vector<AbstractEdge> edges;
  const Json& list = field(j, "edges", "curve");
  if (!list.is_array()) fail("curve.edges", "expected a list");
  for (std::size_t i = 0; i < list.size(); ++i)
    edges.push_back(parse_abstract_edge(list[i], true, "curve.edges[" + std::to_string(i) + "]"));
  return AbstractCurve(std::move(vertices), std::move(edges));
}

bool is_parametrized_curve(const Json& j) {
  return j.is_object() && j.contains("manifold") && j.contains("positions");
}

Json to_json(const ParametrizedCurve& h) {
  Json j = to_json(h.abstract);
  j["manifold"] = to_json(h.manifold);
  Json positions = Json::object();
  for (std::size_t v = 0; v < h.abstract.vertex_count(); ++v)
    positions[h.abstract.vertices()[v]] = vector_json(h.positions[v]);
  j["positions"] = positions;
  for (std::size_t e = 0; e < h.abstract.edge_count(); ++e) {
    Json& edge = j["edges"][e];
    const auto& d = h.edges[e];
    edge["direction"] = vector_json(d.direction);
    edge["weight"] = d.weight;
    edge["image_length"] = to_string(d.image_length);
    if (!d.deck_word.empty())
      edge["deck"] = d.deck_word;
    else if (!d.deck.is_identity())
      edge["deck"] = to_json(d.deck);
  }
  return j;
}

ParametrizedCurve parse_parametrized_curve(const Json& j) {
  ParametrizedCurve h;
  h.manifold = parse_manifold(field(j, "manifold", "curve"));
  const std::size_t n = h.manifold.dim();
  auto vertices = parse_vertex_ids(j);

  const Json& pos = field(j, "positions", "curve");
  if (!pos.is_object()) fail("curve.positions", "expected an object keyed by vertex id");
  for (const auto& v : vertices) {
    if (!pos.contains(v)) fail("curve.positions", "no position for vertex '" + v + "'");
    h.positions.push_back(parse_rat_vector(pos[v]));
    if (h.positions.back().size() != n) fail("curve.positions." + v, "wrong dimension");
  }

  std::vector<AbstractEdge> edges;
  const Json& list = field(j, "edges", "curve");
  if (!list.is_array()) fail("curve.edges", "expected a list");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "curve.edges[" + std::to_string(i) + "]";
    const Json& ej = list[i];
    AbstractEdge e = parse_abstract_edge(ej, false, where);
    EdgeEmbedding d;
    d.direction = parse_int_vector(field(ej, "direction", where));
    if (d.direction.size() != n) fail(where + ".direction", "wrong dimension");
    d.weight = ej.contains("weight") ? int64_of(ej["weight"], where + ".weight") : 1;
    if (ej.contains("image_length")) {
      const Json& l = ej["image_length"];
      d.image_length = l.is_string() ? parse_length(l.get<std::string>())
                                     : EdgeLength::finite(parse_rational_json(l));
    } else if (!e.head) {
      d.image_length = EdgeLength::infinite();
    } else if (ej.contains("length") && d.weight != 0) {
      d.image_length = EdgeLength::finite(e.length.value() * d.weight);
    } else {
      fail(where, "edge '" + e.id + "' needs a length or an image_length");
    }
    if (!ej.contains("length") && e.head) {
      if (d.image_length.is_infinite() || d.weight == 0)
        fail(where, "cannot derive the length of edge '" + e.id + "'");
      e.length = EdgeLength::finite(d.image_length.value() / d.weight);
    }
    d.deck = ej.contains("deck") ? parse_deck(ej["deck"], h.manifold, &d.deck_word)
                                 : DeckElement::identity(n);
    edges.push_back(std::move(e));
    h.edges.push_back(std::move(d));
  }
  h.abstract = AbstractCurve(std::move(vertices), std::move(edges));
  return h;
}

Json to_json(const ZeroCycle& z) {
  Json a = Json::array();
  for (const auto& t : z.terms()) a.push_back({{"point", vector_json(t.point)}, {"mult", t.multiplicity}});
  return a;
}

ZeroCycle parse_zero_cycle(const Json& j, const Manifold& m) {
  const Json& list = j.is_object() && j.contains("terms") ? j["terms"] : j;
  if (!list.is_array()) fail("cycle", "expected a list of {\"point\", \"mult\"}");
  std::vector<CycleTerm> terms;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "cycle[" + std::to_string(i) + "]";
    RatVector p = parse_rat_vector(field(list[i], "point", where));
    if (p.size() != m.dim()) fail(where + ".point", "wrong dimension");
    terms.push_back({std::move(p), int64_of(field(list[i], "mult", where), where + ".mult")});
  }
  return ZeroCycle::from_terms(m, std::move(terms));
}

Json to_json(const TropicalForm& f) {
  return {{"dim", f.dim}, {"degree", f.degree}, {"coefficients", vector_json(f.coefficients)}};
}

TropicalForm parse_form(const Json& j) {
  const std::string where = "form";
  const auto dim = static_cast<std::size_t>(int64_of(field(j, "dim", where), "form.dim"));
  if (j.contains("coefficients")) {
    const auto degree = static_cast<std::size_t>(int64_of(field(j, "degree", where), "form.degree"));
    if (degree > dim) fail(where, "degree exceeds dimension");
    TropicalForm f{dim, degree, parse_int_vector(j["coefficients"])};
    if (f.coefficients.size() != binomial(dim, degree))
      fail("form.coefficients", "expected " + std::to_string(binomial(dim, degree)) + " entries");
    return f;
  }
  // Sparse form: [{"indices": [0, 1], "coefficient": 1}, ...]
  const Json& terms = field(j, "terms", where);
  if (!terms.is_array() || terms.empty()) fail("form.terms", "expected a nonempty list");
  std::optional<TropicalForm> f;
  for (const auto& t : terms) {
    std::vector<std::size_t> idx;
    for (const auto& i : field(t, "indices", "form.terms")) idx.push_back(static_cast<std::size_t>(int64_of(i, "form.terms")));
    TropicalForm b;
    try {
      b = TropicalForm::basis(dim, idx);
    } catch (const Error& e) {
      fail("form.terms", e.what());
    }
    if (!f) f = TropicalForm::zero(dim, idx.size());
    if (f->degree != idx.size()) fail("form.terms", "terms of different degrees");
    const Integer c = t.contains("coefficient") ? parse_integer_json(t["coefficient"]) : Integer(1);
    for (std::size_t k = 0; k < b.coefficients.size(); ++k) f->coefficients[k] += c * b.coefficients[k];
  }
  return *f;
}

Json to_json(const GradedSpace& g, std::span<const RatVector> w) {
  Json blocks = Json::array();
  for (const auto& b : g.blocks)
    blocks.push_back({{"dimension", b.dimension}, {"sign", b.sign}, {"form", to_json(b.form)}});
  Json ws = Json::array();
  for (const auto& v : w) ws.push_back(vector_json(v));
  return {{"blocks", blocks}, {"w", ws}};
}

bool is_roitman_instance(const Json& j) { return j.is_object() && j.contains("blocks"); }

RoitmanInstance parse_roitman_instance(const Json& j) {
  RoitmanInstance inst;
  const Json& blocks = field(j, "blocks", "instance");
  if (!blocks.is_array()) fail("instance.blocks", "expected a list");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string where = "instance.blocks[" + std::to_string(i) + "]";
    GradedBlock b;
    b.dimension = static_cast<std::size_t>(int64_of(field(blocks[i], "dimension", where), where));
    b.sign = static_cast<int>(int64_of(field(blocks[i], "sign", where), where));
    if (b.sign != 1 && b.sign != -1) fail(where + ".sign", "expected +1 or -1");
    b.form = parse_form(field(blocks[i], "form", where));
    inst.space.blocks.push_back(std::move(b));
  }
  if (j.contains("w"))
    for (const auto& v : j["w"]) inst.w.push_back(parse_rat_vector(v));
  return inst;
}

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"status", std::string(to_string(c.status))}, {"detail", c.detail}});
  return {{"subject", r.subject}, {"status", r.passed() ? "pass" : "fail"}, {"checks", checks}};
}

Json to_json(const PiecewiseLinearFunction& f) {
  Json j{{"circumference", rational_json(f.circumference)}};
  j["breakpoints"] = vector_json(f.breakpoints);
  j["values"] = vector_json(f.values);
  j["slopes"] = vector_json(f.slopes);
  if (f.breakpoints.empty()) j["constant"] = rational_json(f.constant);
  return j;
}

Json to_json(const CircleDivisor& d) {
  Json a = Json::array();
  for (const auto& p : d) a.push_back({{"position", rational_json(p.position)}, {"mult", p.multiplicity}});
  return a;
}

CircleDivisor parse_circle_divisor(const Json& j) {
  if (!j.is_array()) fail("divisor", "expected a list of {\"position\", \"mult\"}");
  CircleDivisor d;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "divisor[" + std::to_string(i) + "]";
    d.push_back({parse_rational_json(field(j[i], "position", where)),
                 int64_of(field(j[i], "mult", where), where + ".mult")});
  }
  return d;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace troplin::io
