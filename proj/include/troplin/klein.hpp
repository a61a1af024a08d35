#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "troplin/embedded.hpp"
#include "troplin/manifold.hpp"

namespace troplin {

/// A closed affine circle in `base`: t -> anchor + t * direction for t in
/// [0, circumference], closed up by `closing`, whose linear part fixes the
/// direction.
struct CircleEmbedding {
  Manifold base;
  RatVector anchor;
  IntVector direction;
  Rational circumference;
  DeckElement closing;
  std::string closing_word;

  /// Lift of the point at parameter t in [0, circumference).
  RatVector lift(const Rational& t) const;
};

/// The circle S^1 of circumference c, as the 1-dimensional torus R / cZ.
CircleEmbedding standard_circle(const Rational& circumference);

/// A fiber of one of the two coordinate projections of a Klein bottle.
struct FiberCircle {
  CircleEmbedding circle;
  int axis = 1;
  /// Horizontal fibers through y = 0 or y = y0/2, which close up after x0.
  bool special = false;

  const Rational& circumference() const noexcept { return circle.circumference; }
};

/// axis 1: the vertical circle x = value; axis 2: the horizontal one y = value.
/// Throws WrongAmbient unless k is a Klein bottle, DimensionMismatch for other axes.
FiberCircle fiber_circle(const Manifold& k, int axis, const Rational& value);

struct CirclePoint {
  Rational position;
  std::int64_t multiplicity = 0;
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
};

using CircleDivisor = std::vector<CirclePoint>;

/// Positions reduced into [0, c), duplicates merged, zeros dropped, sorted.
CircleDivisor normalize_divisor(const Rational& circumference, const CircleDivisor& divisor);

/// sum m_i t_i mod c. Throws NonZeroDegree, NonPositiveParameter.
Rational circle_jacobian_class(const Rational& circumference, const CircleDivisor& divisor);

/// Continuous piecewise linear function on R / cZ with integer slopes.
/// slopes[i] holds on (breakpoints[i], breakpoints[i+1]), the last one wrapping
/// around to breakpoints[0] + c. Without breakpoints the function is constant.
struct PiecewiseLinearFunction {
  Rational circumference;
  std::vector<Rational> breakpoints;
  std::vector<Rational> values;
  std::vector<Integer> slopes;
  Rational constant = 0;  ///< value when there are no breakpoints

  Rational value_at(const Rational& t) const;
  /// Slope after minus slope before at each breakpoint.
  CircleDivisor divisor() const;
  /// Values agree with the slopes, the loop closes and every slope change is nonzero.
  bool is_consistent() const;
};

/// The function whose slope-change divisor is `divisor`, with value 0 at the
/// first breakpoint. Throws NonZeroDegree, NotPrincipal.
PiecewiseLinearFunction principal_function(const Rational& circumference,
                                           const CircleDivisor& divisor);

/// Graph of f over the circle inside base x R, with a vertical ray of weight
/// |m| at each breakpoint of slope change m: downward when m > 0, upward when
/// m < 0. Its boundary cycle is therefore minus the pushed-forward divisor.
/// The result is validated; throws ValidationFailed, DimensionMismatch.
ParametrizedCurve modification_curve(const CircleEmbedding& circle, const PiecewiseLinearFunction& f);

/// sum m_i [lift(t_i)] as a cycle on the circle's base.
ZeroCycle push_forward(const CircleEmbedding& circle, const CircleDivisor& divisor);

struct AlbaneseClass {
  std::int64_t degree = 0;
  Rational value;    ///< in [0, modulus)
  Rational modulus;  ///< x0
  friend bool operator==(const AlbaneseClass&, const AlbaneseClass&) = default;
};

/// (sum m_i, sum m_i x(p_i) mod x0). Throws WrongAmbient.
AlbaneseClass albanese_class(const Manifold& k, const ZeroCycle& z);

bool chow_equivalent(const Manifold& k, const ZeroCycle& z1, const ZeroCycle& z2);

/// (x, y) -> (x, -y), reduced.
RatVector involution(const Manifold& k, std::span<const Rational> p);
/// theta -> (theta, 0), reduced.
RatVector section(const Manifold& k, const Rational& theta);

/// Curve in K x R with boundary 2[iota(p)] - 2[p]. Throws SpecialFiber.
ParametrizedCurve witness_two_torsion(const Manifold& k, std::span<const Rational> p);

/// Curve in K x R with boundary 2[s(x_p)] - [p] - [iota(p)]. Throws OnSection.
ParametrizedCurve witness_fiber_relation(const Manifold& k, std::span<const Rational> p);

}  // namespace troplin
