#pragma once

// JSON records for every result type. Numbers that may be fractional are
// "p/q" strings; counts that may exceed 64 bits are decimal strings.

#include "taut/degeneration.hpp"
#include "taut/elsv.hpp"
#include "taut/graphs.hpp"
#include "taut/hurwitz.hpp"
#include "taut/symmetric.hpp"

#include <json.hpp>

namespace taut {

using Json = nlohmann::ordered_json;

Json to_json(const Permutation& p);  // {cycles: "(1 2)(3)", images: [..]}
Json to_json(const Partition& alpha);
Json to_json(const MonodromyTuple& tuple);

/// {g, alpha, d, n, r, tuple_count, h, h_labeled}
Json to_json(const HurwitzValue& value);
HurwitzValue hurwitz_value_from_json(const Json& j);

/// [{g, n, a: [..], k, value}]
Json to_json(const HodgeTable& table);
HodgeTable hodge_table_from_json(const Json& j);

Json to_json(const ElsvReport& report);

/// {vertices: [{id, genus}], edges: [[u, v]], legs: {label: vertex}}
Json to_json(const StableGraph& graph);
StableGraph graph_from_json(const Json& j);

/// Steps as {from: hash, move: {half_edge, pairing}, to: hash}, where the
/// move acts on the canonical graph of `from`.
Json to_json(const ConnectivityCertificate& certificate);

/// {g, alpha, tuple_count, strata: [{graph, hash, incidences, weight}],
///  total, expected_total, match}
Json to_json(const StratumHistogram& histogram);

}  // namespace taut
