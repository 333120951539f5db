#pragma once

#include <string>

#include "json.hpp"

#include "lnc/analysis.hpp"
#include "lnc/coding.hpp"
#include "lnc/duality.hpp"

namespace lnc {

using json = nlohmann::json;

// Field: {"p": int, "m": int, "poly": int (optional, extension fields only)}
json field_to_json(const Field& f);
FieldRef field_from_json(const json& j);

// Network:
// {"field": {...},
//  "nodes": [{"id": str, "kind": str, "variant": "variant1"|"variant2"|{"hybrid": h}}],
//  "edges": [{"id": str, "from": str, "to": str}],
//  "source": str,
//  "destinations": [{"node": str}]}
// Unknown keys are rejected everywhere.
json network_to_json(const Network& net);
Network network_from_json(const json& j);

// Layered network: the network schema plus {"layers": {id: int}, "inserted": [ids]}.
json layered_to_json(const LayeredNetwork& lnet);
LayeredNetwork layered_from_json(const json& j);

/// Accepts either schema; layered files keep their layering, plain networks
/// come back with no layer info (layered == false).
struct LoadedNetwork {
    Network net;
    bool layered = false;
    LayeredNetwork lnet; // meaningful only when layered
};
LoadedNetwork load_network_json(const json& j);

// Assignment: {"field": {...}, "seed": int, "prng": "splitmix64"} or
// {"field": {...}, "coeffs": [{"node": id, "in_edge": id, "out_edge": id|null, "value": int}]}.
json assignment_to_json(const CodingAssignment& asg);
json seeded_assignment_json(const Field& f, std::uint64_t seed);
CodingAssignment assignment_from_json(const json& j, const Network& net);

// Matrix: {"rows": r, "cols": c, "data": [row-major ints]}.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, FieldRef field);

json channel_to_json(const ChannelMatrix& cm);

json conversion_map_to_json(const ConversionMap& map);
json validation_to_json(const ValidationReport& rep);
json mincut_report_to_json(const MincutReport& rep);

json parse_json(const std::string& text);
std::string read_file(const std::string& path);

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a half-written file.
void atomic_write(const std::string& path, const std::string& content);

} // namespace lnc
