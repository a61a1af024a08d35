#pragma once

// JSON reading and writing for every value the command line handles. Parse
// functions throw Error(ParseError) with a path-like location in the message.

#include <nlohmann/json.hpp>

#include <string>

#include "troplin/curve.hpp"
#include "troplin/embedded.hpp"
#include "troplin/klein.hpp"
#include "troplin/manifold.hpp"
#include "troplin/pairing.hpp"
#include "troplin/report.hpp"

namespace troplin::io {

using Json = nlohmann::json;

Json rational_json(const Rational& r);
Rational parse_rational_json(const Json& j);
Json integer_json(const Integer& z);
Integer parse_integer_json(const Json& j);
Json vector_json(std::span<const Rational> v);
RatVector parse_rat_vector(const Json& j);
Json vector_json(std::span<const Integer> v);
IntVector parse_int_vector(const Json& j);

Json to_json(const Manifold& m);
Manifold parse_manifold(const Json& j);

Json to_json(const DeckElement& g);
/// A generator word or {"matrix", "translation"}.
DeckElement parse_deck(const Json& j, const Manifold& m, std::string* word = nullptr);

Json to_json(const AbstractCurve& c);
AbstractCurve parse_abstract_curve(const Json& j);

Json to_json(const ParametrizedCurve& h);
ParametrizedCurve parse_parametrized_curve(const Json& j);

/// True when the document carries a manifold and vertex positions.
bool is_parametrized_curve(const Json& j);
bool is_manifold(const Json& j);

Json to_json(const ZeroCycle& z);
ZeroCycle parse_zero_cycle(const Json& j, const Manifold& m);

Json to_json(const TropicalForm& f);
TropicalForm parse_form(const Json& j);

Json to_json(const GradedSpace& g, std::span<const RatVector> w);
RoitmanInstance parse_roitman_instance(const Json& j);
bool is_roitman_instance(const Json& j);

Json to_json(const Report& r);

Json to_json(const PiecewiseLinearFunction& f);
Json to_json(const CircleDivisor& d);
CircleDivisor parse_circle_divisor(const Json& j);

/// Reads and parses a file. Throws ParseError.
Json read_file(const std::string& path);

}  // namespace troplin::io
