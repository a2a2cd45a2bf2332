#pragma once

// JSON encodings. Rationals are written as strings "p/q" (or "p") and read
// from strings or integers; "+inf" encodes +∞.

#include <nlohmann/json.hpp>

#include "polycalc/hpolyhedron.hpp"
#include "polycalc/marginals.hpp"
#include "polycalc/multimap.hpp"
#include "polycalc/oracles.hpp"
#include "polycalc/plfunction.hpp"
#include "polycalc/polyhedra.hpp"
#include "polycalc/rational.hpp"
#include "polycalc/supports.hpp"

namespace polycalc {

using Json = nlohmann::ordered_json;

// Every reader throws ParseError for malformed numbers and SchemaError for
// structural problems.
Rational rational_from_json(const Json& j);
Vec vec_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
ExtReal ext_real_from_json(const Json& j);
HPolyhedron hpolyhedron_from_json(const Json& j);
PolyhedralCone cone_from_json(const Json& j);
PLFunction plfunction_from_json(const Json& j);
Multimap multimap_from_json(const Json& j);
// {"A": [[...]...], "b": [...]}; "cols" is needed only when A has no rows.
LinearMap linear_map_from_json(const Json& j);

Json to_json(const Rational& r);
Json to_json(const ExtReal& v);
Json to_json(VecView v);
Json to_json(const Matrix& m);
Json to_json(const HPolyhedron& p);
Json to_json(const PolyhedralCone& k);
Json to_json(const PLFunction& f);
Json to_json(const Multimap& f);
Json to_json(const LinearMap& a);
Json to_json(const Generators& g);
Json to_json(const QCReport& qc);
Json to_json(const OracleReport& r);

// Looks up a required member, SchemaError when absent.
const Json& member(const Json& j, const char* key);

}  // namespace polycalc
