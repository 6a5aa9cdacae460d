#pragma once

#include "qk/homology.hpp"
#include "qk/twist.hpp"

#include <json.hpp>

namespace qk {

using Json = nlohmann::ordered_json;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rational literals are strings "p/q" or "p"; series are arrays ordered by
// h-power. trunc_order may be overridden when loading (-1 keeps the file's).

Json series_to_json(const Series& s);
Series series_from_json(const Json& j, int order);

Json poly_to_json(const NCPoly& p);
NCPoly poly_from_json(const Json& j, int n, int order);

// {name, trunc_order, generators: [...], relations:
//   [{i, j, terms: [{coeff, h_pow, expo}]}]}, relations for i < j only,
// indices 1-based on the wire.
Json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j, int trunc_override = -1);
Presentation load_presentation(const std::string& path, int trunc_override = -1);

// {base: <presentation>, r: [{sign, i, j}]}
TwistData twist_from_json(const Json& j, int trunc_override = -1);
TwistData load_twist(const std::string& path, int trunc_override = -1);

// {rank, actions: [[ [series...] ]]} or the literal "trivial"
ModulePresentation module_from_json(const Json& j, int gens, int order);
ModulePresentation load_module(const std::string& path, int gens, int order);

// per-q list of {source, targets: [{subset, poly}]}, 1-based subsets
Json complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j);

Json load_json(const std::string& path);

} // namespace qk
