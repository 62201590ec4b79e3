#pragma once

#include <string>

#include "ordinal.hpp"
#include "report.hpp"
#include "space.hpp"
#include "vietoris.hpp"

namespace seqhyper {

// Ordinals in the notation printed by Ordinal::to_string, e.g. "w^3",
// "w^2*3+w+5", "w^(w+1)".
Ordinal parse_ordinal(const std::string& text);

// Points:  7 | "F" | "0.0101b" | {"gen": g} | {"ordinal": "w^2+1"} |
//          {"dup": p, "level": b} | {"side": s, "point": p} |
//          {"sigma": {"id": "bits", ...}}
Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

// Opens:   "X" | "offgen" | {"singleton": p} | {"minus": U, "points": [p]} |
//          {"complement": U} | {"xi": k} | {"psi": g} | {"ord": [lo|null, hi]} |
//          {"dy": "bits"} | {"hat": U} | {"side": s, "open": U} |
//          {"box": {"id": "bits", ...}}
Json open_to_json(const Open& u);
Open open_from_json(const Json& j);

// A canonical open is a JSON array of opens; pieces are re-validated.
Json canonical_to_json(const CanonicalOpen& o);
CanonicalOpen canonical_from_json(const Space& x, const Json& j);

// Space descriptors:
//   {"kind": "xi", "filter": "frechet"|"partition"|"fan", "partition": "valuation"|"cantor-rows"}
//   {"kind": "psi", "family": "branches", "depth": 3} | {"kind": "psi", "family": "residues", "modulus": 4}
//   {"kind": "ordinal", "alpha": "w^3"} | {"kind": "ordinal-blocks", "alpha": "w^3"}
//   {"kind": "dyadic"} | {"kind": "cantor"} | {"kind": "sigma"}
//   {"kind": "duplicate", "base": D} | {"kind": "sum", "left": D, "right": D}
SpacePtr build_space(const Json& descriptor);

}  // namespace seqhyper
