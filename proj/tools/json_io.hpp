#pragma once

#include <json.hpp>

#include <string>

#include "shimura/cartier.hpp"
#include "shimura/display.hpp"
#include "shimura/pel.hpp"
#include "shimura/semilinear.hpp"
#include "shimura/stability.hpp"

namespace shimura::io {

using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
Json to_json(const mpz_class& x);
mpz_class parse_integer(const Json& j);

Json to_json(const WittContext& ctx);
WittContext parse_context(const Json& j);

// Bare coefficient array.
Json to_json(const WittElem& x);
// Accepts an integer, a coefficient array (padded with zeros up to m), or
// {"coeffs": [...]}.
WittElem parse_elem(const WittContext& ctx, const Json& j);

Json to_json(const WMatrix& m);
WMatrix parse_matrix(const WittContext& ctx, const Json& j);

// {"ctx": ..., "rank": h, "frobenius": [[...]], "verschiebung": optional}.
Json to_json(const FCrystal& c);
FCrystal parse_crystal(const Json& j);

Json to_json(const Rational& r);  // [num, den]
Json to_json(const NewtonPolygon& np);  // [[num, den, mult], ...]
Json vertices_json(const NewtonPolygon& np);

// {"p": ..., "n": ..., "f": [...], "g": ...}.
Json to_json(const PelDatum& d);
PelDatum parse_datum(const Json& j);
Embedding parse_label(const PelDatum& datum, const std::string& label);

Json to_json(const TPoly& x);     // array of coefficient arrays
Json to_json(const TMatrix& m);
Json to_json(const HNProfile& h);  // [[rank, degree], ...]

Json to_json(const TruncPoly& x);  // coefficient array
TruncPoly parse_trunc_poly(std::uint64_t p, int truncation, const Json& j);
Json to_json(const PMatrix& m);
// {"p": ..., "N": ..., "rank": ..., "matrix": [[poly, ...], ...]}.
ConnectionModule parse_connection(const Json& j);
Json to_json(const ConnectionModule& cm);

// Throws ParseError for malformed text.
Json parse_text(const std::string& text);

}  // namespace shimura::io
