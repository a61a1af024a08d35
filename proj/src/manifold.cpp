#include "troplin/manifold.hpp"

#include <cctype>
#include <utility>

namespace troplin {

DeckElement DeckElement::identity(std::size_t n) {
  return {IntMatrix::identity(n), RatVector(n)};
}

DeckElement DeckElement::translation_by(RatVector t) {
  const std::size_t n = t.size();
  return {IntMatrix::identity(n), std::move(t)};
}

bool DeckElement::is_identity() const {
  return linear == IntMatrix::identity(dim()) && is_zero(translation);
}

RatVector DeckElement::apply(std::span<const Rational> x) const {
  RatVector out = apply_linear(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += translation[i];
  return out;
}

RatVector DeckElement::apply_linear(std::span<const Rational> v) const {
  return to_rational(linear).apply(v);
}

IntVector DeckElement::apply_linear(std::span<const Integer> v) const {
  return linear.apply(v);
}

DeckElement DeckElement::compose(const DeckElement& inner) const {
  if (dim() != inner.dim())
    throw Error(ErrorCode::DimensionMismatch, "composing deck elements of different dimension");
  return {linear * inner.linear, apply(inner.translation)};
}

DeckElement DeckElement::inverse() const {
  IntMatrix inv = inverse_unimodular(linear);
  RatVector t = to_rational(inv).apply(translation);
  for (auto& x : t) x = -x;
  return {std::move(inv), std::move(t)};
}

DeckElement DeckElement::extended_by_line() const {
  const std::size_t n = dim();
  DeckElement out = identity(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.linear(i, j) = linear(i, j);
    out.translation[i] = translation[i];
  }
  return out;
}

RatVector apply_deck(const DeckElement& g, std::span<const Rational> x) {
  if (x.size() != g.dim())
    throw Error(ErrorCode::DimensionMismatch, "point and deck element dimensions differ");
  return g.apply(x);
}

std::string_view to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::euclidean: return "euclidean";
    case ManifoldKind::torus: return "torus";
    case ManifoldKind::klein: return "klein";
    case ManifoldKind::product_with_line: return "product_with_line";
    case ManifoldKind::general: return "general";
  }
  return "general";
}

ManifoldKind parse_manifold_kind(std::string_view text) {
  for (auto k : {ManifoldKind::euclidean, ManifoldKind::torus, ManifoldKind::klein,
                 ManifoldKind::product_with_line, ManifoldKind::general})
    if (to_string(k) == text) return k;
  throw Error(ErrorCode::ParseError, "unknown manifold kind '" + std::string(text) + "'");
}

namespace {

std::string default_generator_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "g" + std::to_string(i + 1);
}

}  // namespace

Manifold Manifold::euclidean(std::size_t n) {
  Manifold m;
  m.dim_ = n;
  m.kind_ = ManifoldKind::euclidean;
  return m;
}

Manifold Manifold::torus(const std::vector<RatVector>& lattice) {
  const std::size_t n = lattice.size();
  if (n == 0) throw Error(ErrorCode::DegenerateLattice, "empty lattice");
  RatMatrix basis(0, n);
  for (const auto& v : lattice) {
    if (v.size() != n)
      throw Error(ErrorCode::DegenerateLattice, "torus needs n lattice vectors in R^n");
    basis.append_row(v);
  }
  if (rank(basis) != n)
    throw Error(ErrorCode::DegenerateLattice, "lattice vectors are linearly dependent");
  Manifold m;
  m.dim_ = n;
  m.kind_ = ManifoldKind::torus;
  for (std::size_t i = 0; i < n; ++i)
    m.generators_.push_back({default_generator_name(i), DeckElement::translation_by(lattice[i])});
  return m;
}

Manifold Manifold::klein(const Rational& x0, const Rational& y0) {
  if (x0 <= 0 || y0 <= 0)
    throw Error(ErrorCode::NonPositiveParameter, "Klein bottle parameters must be positive");
  Manifold m;
  m.dim_ = 2;
  m.kind_ = ManifoldKind::klein;
  m.klein_ = KleinParameters{x0, y0};
  m.generators_.push_back({"a", {IntMatrix::identity(2), RatVector{0, y0}}});
  m.generators_.push_back({"b", {IntMatrix{{1, 0}, {0, -1}}, RatVector{x0, 0}}});
  return m;
}

Manifold Manifold::product_with_line(const Manifold& base) {
  Manifold m;
  m.dim_ = base.dim_ + 1;
  m.kind_ = ManifoldKind::product_with_line;
  for (const auto& g : base.generators_)
    m.generators_.push_back({g.name, g.element.extended_by_line()});
  m.base_ = std::make_shared<const Manifold>(base);
  return m;
}

Manifold Manifold::general(std::size_t n, std::vector<NamedGenerator> generators) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    auto& g = generators[i];
    if (g.element.dim() != n || g.element.linear.rows() != n || g.element.linear.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "generator dimension differs from manifold");
    if (abs(determinant(g.element.linear)) != 1)
      throw Error(ErrorCode::NotUnimodular, "generator '" + g.name + "' is not in GL(n, Z)");
    if (g.name.empty()) g.name = default_generator_name(i);
  }
  Manifold m;
  m.dim_ = n;
  m.kind_ = ManifoldKind::general;
  m.generators_ = std::move(generators);
  return m;
}

const DeckElement& Manifold::generator(std::string_view name) const {
  for (const auto& g : generators_)
    if (g.name == name) return g.element;
  throw Error(ErrorCode::UnknownGenerator, "no generator named '" + std::string(name) + "'");
}

DeckElement Manifold::resolve_word(std::string_view word) const {
  DeckElement result = DeckElement::identity(dim_);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < word.size() && (std::isspace(static_cast<unsigned char>(word[i])) || word[i] == '*'))
      ++i;
  };
  skip_space();
  if (word.substr(i) == "1") return result;
  while (i < word.size()) {
    std::size_t start = i;
    while (i < word.size() && (std::isalnum(static_cast<unsigned char>(word[i])) || word[i] == '_'))
      ++i;
    if (start == i)
      throw Error(ErrorCode::ParseError, "malformed deck word '" + std::string(word) + "'");
    const DeckElement& g = generator(word.substr(start, i - start));
    long long power = 1;
    if (i < word.size() && word[i] == '^') {
      ++i;
      std::size_t exp_start = i;
      if (i < word.size() && (word[i] == '-' || word[i] == '+')) ++i;
      while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) ++i;
      try {
        power = std::stoll(std::string(word.substr(exp_start, i - exp_start)));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad exponent in deck word '" + std::string(word) + "'");
      }
    }
    const DeckElement step = power < 0 ? g.inverse() : g;
    for (long long k = 0; k < (power < 0 ? -power : power); ++k) result = result.compose(step);
    skip_space();
  }
  return result;
}

bool operator==(const Manifold& a, const Manifold& b) {
  if (a.dim_ != b.dim_ || a.kind_ != b.kind_ || a.generators_ != b.generators_ ||
      a.klein_ != b.klein_)
    return false;
  if (static_cast<bool>(a.base_) != static_cast<bool>(b.base_)) return false;
  return !a.base_ || *a.base_ == *b.base_;
}

Manifold make_euclidean(std::size_t n) { return Manifold::euclidean(n); }
Manifold make_torus(const std::vector<RatVector>& lattice) { return Manifold::torus(lattice); }
Manifold make_klein(const Rational& x0, const Rational& y0) { return Manifold::klein(x0, y0); }
Manifold product_with_line(const Manifold& base) { return Manifold::product_with_line(base); }

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TropicalForm TropicalForm::zero(std::size_t dim, std::size_t degree) {
  return {dim, degree, IntVector(binomial(dim, degree))};
}

TropicalForm TropicalForm::basis(std::size_t dim, std::span<const std::size_t> indices) {
  TropicalForm f = zero(dim, indices.size());
  auto subsets = combinations(dim, indices.size());
  for (std::size_t i = 0; i < subsets.size(); ++i)
    if (std::equal(subsets[i].begin(), subsets[i].end(), indices.begin(), indices.end())) {
      f.coefficients[i] = 1;
      return f;
    }
  throw Error(ErrorCode::DimensionMismatch, "basis form indices must be ascending and < dim");
}

bool TropicalForm::is_zero() const { return troplin::is_zero(coefficients); }

Rational TropicalForm::evaluate(std::span<const RatVector> vectors) const {
  if (vectors.size() != degree)
    throw Error(ErrorCode::DimensionMismatch, "form of degree " + std::to_string(degree) +
                                                  " evaluated on " +
                                                  std::to_string(vectors.size()) + " vectors");
  for (const auto& v : vectors)
    if (v.size() != dim)
      throw Error(ErrorCode::DimensionMismatch, "vector dimension differs from form dimension");
  if (degree == 0) return coefficients.empty() ? Rational(0) : Rational(coefficients[0]);
  auto subsets = combinations(dim, degree);
  Rational total = 0;
  RatMatrix minor(degree, degree);
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    if (coefficients[s] == 0) continue;
    for (std::size_t r = 0; r < degree; ++r)
      for (std::size_t c = 0; c < degree; ++c) minor(r, c) = vectors[c][subsets[s][r]];
    total += Rational(coefficients[s]) * determinant(minor);
  }
  return total;
}

TropicalForm TropicalForm::pullback(const IntMatrix& a) const {
  if (a.rows() != dim || a.cols() != dim)
    throw Error(ErrorCode::DimensionMismatch, "pullback matrix dimension mismatch");
  auto subsets = combinations(dim, degree);
  TropicalForm out = zero(dim, degree);
  IntMatrix minor(degree, degree);
  for (std::size_t target = 0; target < subsets.size(); ++target) {
    Integer acc = 0;
    for (std::size_t source = 0; source < subsets.size(); ++source) {
      if (coefficients[source] == 0) continue;
      for (std::size_t r = 0; r < degree; ++r)
        for (std::size_t c = 0; c < degree; ++c)
          minor(r, c) = a(subsets[source][r], subsets[target][c]);
      acc += coefficients[source] * (degree == 0 ? Integer(1) : determinant(minor));
    }
    out.coefficients[target] = acc;
  }
  return out;
}

TropicalForm TropicalForm::wedge_line() const {
  TropicalForm out = zero(dim + 1, degree + 1);
  auto source = combinations(dim, degree);
  auto target = combinations(dim + 1, degree + 1);
  for (std::size_t s = 0; s < source.size(); ++s) {
    if (coefficients[s] == 0) continue;
    auto idx = source[s];
    idx.push_back(dim);
    for (std::size_t t = 0; t < target.size(); ++t)
      if (target[t] == idx) out.coefficients[t] = coefficients[s];
  }
  return out;
}

bool is_invariant(const TropicalForm& form, const Manifold& m) {
  if (form.dim != m.dim()) return false;
  for (const auto& g : m.generators())
    if (form.pullback(g.element.linear) != form) return false;
  return true;
}

std::vector<TropicalForm> invariant_forms(const Manifold& m, std::size_t degree) {
  const std::size_t n = m.dim();
  if (degree > n)
    throw Error(ErrorCode::DimensionMismatch, "form degree exceeds manifold dimension");
  const std::size_t count = binomial(n, degree);
  // Stack (A^* - I) over all generators; the invariant forms are its kernel.
  IntMatrix system(0, count);
  for (const auto& g : m.generators()) {
    IntMatrix action(count, count);
    for (std::size_t j = 0; j < count; ++j) {
      TropicalForm e = TropicalForm::zero(n, degree);
      e.coefficients[j] = 1;
      TropicalForm image = e.pullback(g.element.linear);
      for (std::size_t i = 0; i < count; ++i) action(i, j) = image.coefficients[i];
    }
    for (std::size_t i = 0; i < count; ++i) {
      IntVector row = action.row_vector(i);
      row[i] -= 1;
      system.append_row(row);
    }
  }
  std::vector<TropicalForm> out;
  if (system.rows() == 0) {
    for (std::size_t j = 0; j < count; ++j) {
      TropicalForm e = TropicalForm::zero(n, degree);
      e.coefficients[j] = 1;
      out.push_back(std::move(e));
    }
    return out;
  }
  for (auto& k : integer_kernel(system)) out.push_back({n, degree, std::move(k)});
  return out;
}

AlbaneseData albanese_data(const Manifold& m) {
  AlbaneseData out;
  out.forms = invariant_forms(m, 1);
  out.rank = out.forms.size();
  for (const auto& g : m.generators()) {
    RatVector period;
    for (const auto& alpha : out.forms) {
      RatVector t = g.element.translation;
      period.push_back(alpha.evaluate(std::span<const RatVector>(&t, 1)));
    }
    out.periods.push_back(std::move(period));
  }
  // Rational periods generate a discrete subgroup: clear denominators and
  // take the Hermite form of the resulting integer lattice.
  Integer den = 1;
  for (const auto& p : out.periods)
    for (const auto& x : p) den = lcm(den, boost::multiprecision::denominator(x));
  IntMatrix scaled(0, out.rank);
  for (const auto& p : out.periods) {
    IntVector row;
    for (const auto& x : p) row.push_back(boost::multiprecision::numerator(Rational(x * den)));
    scaled.append_row(row);
  }
  if (out.rank > 0 && scaled.rows() > 0) {
    HermiteForm h = hermite_normal_form(scaled);
    for (std::size_t i = 0; i < h.rank; ++i) {
      RatVector v;
      for (const auto& x : h.H.row(i)) v.push_back(Rational(x, den));
      out.lattice_basis.push_back(std::move(v));
    }
  }
  return out;
}

namespace {

RatVector reduce_torus(const Manifold& m, std::span<const Rational> x) {
  const std::size_t n = m.dim();
  RatMatrix lattice(n, n);  // columns are the lattice vectors
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) lattice(i, j) = m.generators()[j].element.translation[i];
  RatVector coords = inverse(lattice).apply(x);
  for (auto& c : coords) c -= Rational(floor(c));
  return lattice.apply(coords);
}

RatVector reduce_klein(const KleinParameters& k, std::span<const Rational> x) {
  // b^-k moves x into [0, x0) and flips y when k is odd; a^m then fixes y.
  Integer shifts = floor(x[0] / k.x0);
  Rational px = x[0] - Rational(shifts) * k.x0;
  Rational py = (shifts % 2 == 0) ? x[1] : Rational(-x[1]);
  return {px, mod(py, k.y0)};
}

}  // namespace

RatVector reduce_point(const Manifold& m, std::span<const Rational> x) {
  if (x.size() != m.dim())
    throw Error(ErrorCode::DimensionMismatch, "point dimension differs from manifold");
  switch (m.kind()) {
    case ManifoldKind::euclidean: return {x.begin(), x.end()};
    case ManifoldKind::torus: return reduce_torus(m, x);
    case ManifoldKind::klein: return reduce_klein(*m.klein_parameters(), x);
    case ManifoldKind::product_with_line: {
      RatVector base = reduce_point(*m.base(), x.first(m.dim() - 1));
      base.push_back(x.back());
      return base;
    }
    case ManifoldKind::general: break;
  }
  throw Error(ErrorCode::UnsupportedManifoldKind,
              "no canonical fundamental domain for a general deck group");
}

}  // namespace troplin
