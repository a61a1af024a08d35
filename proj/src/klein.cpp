#include "troplin/klein.hpp"

#include <algorithm>
#include <map>

namespace troplin {

namespace {

const KleinParameters& klein_of(const Manifold& k) {
  if (k.kind() != ManifoldKind::klein || !k.klein_parameters())
    throw Error(ErrorCode::WrongAmbient, "expected a Klein bottle");
  return *k.klein_parameters();
}

void require_positive(const Rational& c) {
  if (c <= 0) throw Error(ErrorCode::NonPositiveParameter, "circumference must be positive");
}

std::int64_t degree_of(const CircleDivisor& d) {
  std::int64_t total = 0;
  for (const auto& p : d) total += p.multiplicity;
  return total;
}

RatVector point2(std::span<const Rational> p) {
  if (p.size() != 2) throw Error(ErrorCode::DimensionMismatch, "expected a point of the Klein bottle");
  return {p.begin(), p.end()};
}

}  // namespace

RatVector CircleEmbedding::lift(const Rational& t) const {
  RatVector x = anchor;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += t * Rational(direction[i]);
  return x;
}

CircleEmbedding standard_circle(const Rational& circumference) {
  require_positive(circumference);
  Manifold s1 = make_torus({RatVector{circumference}});
  DeckElement closing = s1.resolve_word("a^-1");
  return {s1, RatVector{0}, IntVector{1}, circumference, closing, "a^-1"};
}

FiberCircle fiber_circle(const Manifold& k, int axis, const Rational& value) {
  const auto& [x0, y0] = klein_of(k);
  FiberCircle f;
  f.axis = axis;
  f.circle.base = k;
  if (axis == 1) {
    f.circle.anchor = {mod(value, x0), 0};
    f.circle.direction = {0, 1};
    f.circle.circumference = y0;
    f.circle.closing_word = "a^-1";
  } else if (axis == 2) {
    const Rational y = mod(value, y0);
    f.circle.anchor = {0, y};
    f.circle.direction = {1, 0};
    if (y == 0) {
      f.special = true;
      f.circle.circumference = x0;
      f.circle.closing_word = "b^-1";
    } else if (y * 2 == y0) {
      f.special = true;
      f.circle.circumference = x0;
      f.circle.closing_word = "a b^-1";
    } else {
      f.circle.circumference = 2 * x0;
      f.circle.closing_word = "b^-2";
    }
  } else {
    throw Error(ErrorCode::DimensionMismatch, "fiber axis must be 1 or 2");
  }
  f.circle.closing = k.resolve_word(f.circle.closing_word);
  return f;
}

CircleDivisor normalize_divisor(const Rational& circumference, const CircleDivisor& divisor) {
  require_positive(circumference);
  std::map<Rational, std::int64_t> merged;
  for (const auto& p : divisor) merged[mod(p.position, circumference)] += p.multiplicity;
  CircleDivisor out;
  for (const auto& [t, m] : merged)
    if (m != 0) out.push_back({t, m});
  return out;
}

Rational circle_jacobian_class(const Rational& circumference, const CircleDivisor& divisor) {
  require_positive(circumference);
  if (degree_of(divisor) != 0)
    throw Error(ErrorCode::NonZeroDegree, "divisor has degree " + std::to_string(degree_of(divisor)));
  Rational total = 0;
  for (const auto& p : divisor) total += Rational(p.multiplicity) * mod(p.position, circumference);
  return mod(total, circumference);
}

Rational PiecewiseLinearFunction::value_at(const Rational& t) const {
  if (breakpoints.empty()) return constant;
  Rational s = mod(t, circumference);
  // Last breakpoint at or before s, wrapping to the final piece.
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), s);
  std::size_t i;
  if (it == breakpoints.begin()) {
    i = breakpoints.size() - 1;
    s += circumference;
  } else {
    i = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  }
  return values[i] + Rational(slopes[i]) * (s - breakpoints[i]);
}

CircleDivisor PiecewiseLinearFunction::divisor() const {
  CircleDivisor out;
  const std::size_t k = breakpoints.size();
  for (std::size_t i = 0; i < k; ++i) {
    Integer change = slopes[i] - slopes[(i + k - 1) % k];
    if (change != 0) out.push_back({breakpoints[i], static_cast<std::int64_t>(change)});
  }
  return out;
}

bool PiecewiseLinearFunction::is_consistent() const {
  const std::size_t k = breakpoints.size();
  if (circumference <= 0) return false;
  if (k == 0) return values.empty() && slopes.empty();
  if (values.size() != k || slopes.size() != k) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (breakpoints[i] < 0 || breakpoints[i] >= circumference) return false;
    if (i + 1 < k && breakpoints[i + 1] <= breakpoints[i]) return false;
    const Rational next = i + 1 < k ? breakpoints[i + 1] : breakpoints[0] + circumference;
    if (values[i] + Rational(slopes[i]) * (next - breakpoints[i]) != values[(i + 1) % k]) return false;
    if (slopes[i] == slopes[(i + k - 1) % k]) return false;
  }
  return true;
}

PiecewiseLinearFunction principal_function(const Rational& circumference,
                                           const CircleDivisor& divisor) {
  const Rational cls = circle_jacobian_class(circumference, divisor);
  if (cls != 0)
    throw Error(ErrorCode::NotPrincipal, "Jacobian class is " + to_string(cls) + " mod " +
                                             to_string(circumference));
  CircleDivisor d = normalize_divisor(circumference, divisor);
  PiecewiseLinearFunction f;
  f.circumference = circumference;
  if (d.empty()) return f;

  const std::size_t k = d.size();
  std::vector<Integer> partial(k);
  std::vector<Rational> length(k);
  Rational weighted = 0;
  Integer running = 0;
  for (std::size_t i = 0; i < k; ++i) {
    running += d[i].multiplicity;
    partial[i] = running;
    length[i] = (i + 1 < k ? d[i + 1].position : d[0].position + circumference) - d[i].position;
    weighted += Rational(partial[i]) * length[i];
  }
  // The loop closes iff the slopes integrate to zero around the circle.
  const Rational offset = -weighted / circumference;
  if (boost::multiprecision::denominator(offset) != 1)
    throw Error(ErrorCode::NotPrincipal, "no integral slope closes the loop");
  const Integer base = boost::multiprecision::numerator(offset);

  Rational value = 0;
  for (std::size_t i = 0; i < k; ++i) {
    f.breakpoints.push_back(d[i].position);
    f.values.push_back(value);
    f.slopes.push_back(base + partial[i]);
    value += Rational(f.slopes.back()) * length[i];
  }
  return f;
}

ParametrizedCurve modification_curve(const CircleEmbedding& circle, const PiecewiseLinearFunction& f) {
  if (f.circumference != circle.circumference)
    throw Error(ErrorCode::DimensionMismatch, "function and circle have different circumferences");
  if (!f.is_consistent())
    throw Error(ErrorCode::ValidationFailed, "piecewise linear function is inconsistent");
  const std::size_t n = circle.base.dim();
  if (circle.anchor.size() != n || circle.direction.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "circle data does not match its base");

  ParametrizedCurve h;
  h.manifold = product_with_line(circle.base);
  const DeckElement closing = circle.closing.extended_by_line();
  auto direction_with_slope = [&](const Integer& s) {
    IntVector d = circle.direction;
    d.push_back(s);
    return d;
  };
  auto lifted = [&](const Rational& t, const Rational& height) {
    RatVector x = circle.lift(t);
    x.push_back(height);
    return x;
  };

  std::vector<std::string> vertices;
  std::vector<AbstractEdge> edges;
  const std::size_t k = f.breakpoints.size();
  if (k == 0) {
    vertices.push_back("v0");
    edges.push_back({"e0", "v0", "v0", EdgeLength::finite(circle.circumference)});
    h.positions.push_back(lifted(0, f.constant));
    h.edges.push_back({direction_with_slope(0), 1, EdgeLength::finite(circle.circumference), closing,
                       circle.closing_word});
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      vertices.push_back("v" + std::to_string(i));
      h.positions.push_back(lifted(f.breakpoints[i], f.values[i]));
    }
    for (std::size_t i = 0; i < k; ++i) {
      const bool closes = i + 1 == k;
      const Rational len =
          (closes ? f.breakpoints[0] + f.circumference : f.breakpoints[i + 1]) - f.breakpoints[i];
      edges.push_back({"e" + std::to_string(i), vertices[i], vertices[(i + 1) % k], EdgeLength::finite(len)});
      h.edges.push_back({direction_with_slope(f.slopes[i]), 1, EdgeLength::finite(len),
                         closes ? closing : DeckElement::identity(n + 1),
                         closes ? circle.closing_word : std::string()});
    }
    std::size_t r = 0;
    for (const auto& [t, m] : f.divisor()) {
      const std::size_t i = static_cast<std::size_t>(
          std::lower_bound(f.breakpoints.begin(), f.breakpoints.end(), t) - f.breakpoints.begin());
      IntVector down(n + 1);
      down[n] = m > 0 ? -1 : 1;
      edges.push_back({"r" + std::to_string(r++), vertices[i], std::nullopt, EdgeLength::infinite()});
      h.edges.push_back({down, m > 0 ? m : -m, EdgeLength::infinite(), DeckElement::identity(n + 1), ""});
    }
  }
  h.abstract = AbstractCurve(std::move(vertices), std::move(edges));

  Report report = validate_parametrized(h);
  if (!report.passed()) {
    std::string msg = "modification curve failed validation:";
    for (const auto* c : report.failures()) msg += " " + c->name + ": " + c->detail;
    throw Error(ErrorCode::ValidationFailed, msg);
  }
  if (!is_horizontal_at_infinity(h))
    throw Error(ErrorCode::ValidationFailed, "modification curve is not horizontal at infinity");
  return h;
}

ZeroCycle push_forward(const CircleEmbedding& circle, const CircleDivisor& divisor) {
  std::vector<CycleTerm> terms;
  for (const auto& p : divisor)
    terms.push_back({circle.lift(mod(p.position, circle.circumference)), p.multiplicity});
  return ZeroCycle::from_terms(circle.base, std::move(terms));
}

AlbaneseClass albanese_class(const Manifold& k, const ZeroCycle& z) {
  const auto& params = klein_of(k);
  AlbaneseClass out;
  out.modulus = params.x0;
  Rational total = 0;
  for (const auto& t : z.terms()) {
    if (t.point.size() != 2) throw Error(ErrorCode::DimensionMismatch, "cycle is not on a surface");
    out.degree += t.multiplicity;
    total += Rational(t.multiplicity) * t.point[0];
  }
  out.value = mod(total, params.x0);
  return out;
}

bool chow_equivalent(const Manifold& k, const ZeroCycle& z1, const ZeroCycle& z2) {
  return albanese_class(k, z1) == albanese_class(k, z2);
}

RatVector involution(const Manifold& k, std::span<const Rational> p) {
  klein_of(k);
  RatVector q = point2(p);
  q[1] = -q[1];
  return reduce_point(k, q);
}

RatVector section(const Manifold& k, const Rational& theta) {
  klein_of(k);
  return reduce_point(k, RatVector{theta, 0});
}

ParametrizedCurve witness_two_torsion(const Manifold& k, std::span<const Rational> p) {
  const auto& params = klein_of(k);
  const RatVector q = reduce_point(k, point2(p));
  FiberCircle fiber = fiber_circle(k, 2, q[1]);
  if (fiber.special)
    throw Error(ErrorCode::SpecialFiber, "p lies on a fiber through y = 0 or y = y0/2");
  // On F^2_y the point p sits at x_p and iota(p) at x_p + x0.
  CircleDivisor d{{q[0], 2}, {q[0] + params.x0, -2}};
  return modification_curve(fiber.circle, principal_function(fiber.circumference(), d));
}

ParametrizedCurve witness_fiber_relation(const Manifold& k, std::span<const Rational> p) {
  const auto& params = klein_of(k);
  const RatVector q = reduce_point(k, point2(p));
  if (q[1] == 0) throw Error(ErrorCode::OnSection, "p lies on the section y = 0");
  FiberCircle fiber = fiber_circle(k, 1, q[0]);
  CircleDivisor d{{q[1], 1}, {params.y0 - q[1], 1}, {0, -2}};
  return modification_curve(fiber.circle, principal_function(fiber.circumference(), d));
}

}  // namespace troplin
