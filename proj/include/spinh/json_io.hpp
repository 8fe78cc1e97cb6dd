#pragma once
// JSON serialization: stable schema with rationals as strings (never floats)
// and key order fixed by construction, so emit(parse(emit(x))) is
// byte-identical.  Top-level documents carry {"schema": 1, "type": ...};
// nested payloads are bare.

#include "spinh/dispersionless.hpp"
#include "spinh/series.hpp"
#include "spinh/strata.hpp"

#include <json.hpp>

namespace spinh {

using Json = nlohmann::ordered_json;

Json scalar_to_json(const ExactScalar& s);                 // "p/q" or {"rat","eps"}
ExactScalar scalar_from_json(const Json& j, int r);

Json series_to_json(const GradedSeries& s);
GradedSeries series_from_json(const Json& j);

Json diffpoly_to_json(const DiffPoly& p);                  // bare payload
DiffPoly diffpoly_from_json(const Json& j, int r);

Json psdo_to_json(const Psdo& a);
Psdo psdo_from_json(const Json& j);

Json psymbol_to_json(const PSymbol& a);
PSymbol psymbol_from_json(const Json& j);

Json graph_to_json(const DecGraph& g);
DecGraph graph_from_json(const Json& j);

}  // namespace spinh
