#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "troplin/linalg.hpp"

namespace troplin {

/// Integral affine map x -> A x + t with A in GL(n, Z).
struct DeckElement {
  IntMatrix linear;
  RatVector translation;

  static DeckElement identity(std::size_t n);
  static DeckElement translation_by(RatVector t);

  std::size_t dim() const noexcept { return translation.size(); }
  bool is_identity() const;

  RatVector apply(std::span<const Rational> x) const;
  /// Linear part only, for transporting tangent vectors.
  RatVector apply_linear(std::span<const Rational> v) const;
  IntVector apply_linear(std::span<const Integer> v) const;

  /// (*this) o inner
  DeckElement compose(const DeckElement& inner) const;
  DeckElement inverse() const;

  /// Same map extended by the identity on one extra trailing coordinate.
  DeckElement extended_by_line() const;

  friend bool operator==(const DeckElement&, const DeckElement&) = default;
};

RatVector apply_deck(const DeckElement& g, std::span<const Rational> x);

enum class ManifoldKind { euclidean, torus, klein, product_with_line, general };

std::string_view to_string(ManifoldKind kind);
ManifoldKind parse_manifold_kind(std::string_view text);

struct KleinParameters {
  Rational x0;
  Rational y0;
  friend bool operator==(const KleinParameters&, const KleinParameters&) = default;
};

struct NamedGenerator {
  std::string name;
  DeckElement element;
  friend bool operator==(const NamedGenerator&, const NamedGenerator&) = default;
};

/// R^n modulo a group of integral affine deck transformations, given by
/// generators. Euclidean, torus and Klein kinds are verified by construction;
/// a general deck group is only checked for unimodular linear parts.
class Manifold {
 public:
  static Manifold euclidean(std::size_t n);
  static Manifold torus(const std::vector<RatVector>& lattice);
  static Manifold klein(const Rational& x0, const Rational& y0);
  static Manifold product_with_line(const Manifold& base);
  static Manifold general(std::size_t n, std::vector<NamedGenerator> generators);

  std::size_t dim() const noexcept { return dim_; }
  ManifoldKind kind() const noexcept { return kind_; }
  const std::vector<NamedGenerator>& generators() const noexcept { return generators_; }
  const std::optional<KleinParameters>& klein_parameters() const noexcept {
    return klein_;
  }
  /// Base manifold B of a product B x R; nullptr for the other kinds.
  const Manifold* base() const noexcept { return base_.get(); }

  /// Generator by name. Throws UnknownGenerator.
  const DeckElement& generator(std::string_view name) const;

  /// Resolves a word such as "a^-1 b" or "a^2" into a deck element. Factors
  /// compose as maps, the rightmost one acting first. "" and "1" denote the
  /// identity.
  DeckElement resolve_word(std::string_view word) const;

  /// The point R^0; only useful as a placeholder before assignment.
  Manifold() = default;

  friend bool operator==(const Manifold& a, const Manifold& b);

 private:
  std::size_t dim_ = 0;
  ManifoldKind kind_ = ManifoldKind::euclidean;
  std::vector<NamedGenerator> generators_;
  std::optional<KleinParameters> klein_;
  std::shared_ptr<const Manifold> base_;
};

Manifold make_euclidean(std::size_t n);
Manifold make_torus(const std::vector<RatVector>& lattice);
Manifold make_klein(const Rational& x0, const Rational& y0);
Manifold product_with_line(const Manifold& base);

/// Monodromy-invariant integral p-covector. Coefficients are indexed by the
/// size-p subsets of {0..dim-1} in lexicographic order.
struct TropicalForm {
  std::size_t dim = 0;
  std::size_t degree = 0;
  IntVector coefficients;

  static TropicalForm zero(std::size_t dim, std::size_t degree);
  /// dx_{i1} ^ ... ^ dx_{ip} for ascending indices.
  static TropicalForm basis(std::size_t dim, std::span<const std::size_t> indices);

  bool is_zero() const;
  /// omega(v_1, ..., v_p), exact.
  Rational evaluate(std::span<const RatVector> vectors) const;
  /// x -> omega(A x_1, ..., A x_p)
  TropicalForm pullback(const IntMatrix& a) const;
  /// omega ^ dt on the product with one extra trailing coordinate.
  TropicalForm wedge_line() const;

  friend bool operator==(const TropicalForm&, const TropicalForm&) = default;
};

std::size_t binomial(std::size_t n, std::size_t k);

bool is_invariant(const TropicalForm& form, const Manifold& m);

/// Saturated Z-basis of the p-covectors fixed by every generator.
std::vector<TropicalForm> invariant_forms(const Manifold& m, std::size_t degree);

struct AlbaneseData {
  std::size_t rank = 0;
  std::vector<TropicalForm> forms;
  /// One period vector (alpha_j(t))_j per generator, in generator order.
  std::vector<RatVector> periods;
  /// Z-basis of the period lattice (rows of its Hermite form).
  std::vector<RatVector> lattice_basis;
};

AlbaneseData albanese_data(const Manifold& m);

/// Canonical fundamental-domain representative. Points in the same deck orbit
/// reduce to the same vector. Throws UnsupportedManifoldKind for general kinds.
RatVector reduce_point(const Manifold& m, std::span<const Rational> x);

}  // namespace troplin
