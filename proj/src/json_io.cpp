#include "lnc/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lnc {

namespace {

void expect_object(const json& j, const std::string& what) {
    if (!j.is_object()) fail(ErrorCode::SchemaViolation, what + " must be a JSON object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) known |= it.key() == k;
        if (!known) fail(ErrorCode::SchemaViolation, what + ": unknown key '" + it.key() + "'");
    }
}

const json& require(const json& j, const char* key, const std::string& what) {
    auto it = j.find(key);
    if (it == j.end()) fail(ErrorCode::SchemaViolation, what + ": missing key '" + key + "'");
    return *it;
}

std::string as_string(const json& j, const std::string& what) {
    if (!j.is_string()) fail(ErrorCode::SchemaViolation, what + " must be a string");
    return j.get<std::string>();
}

std::uint64_t as_uint(const json& j, const std::string& what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        fail(ErrorCode::SchemaViolation, what + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

} // namespace

json field_to_json(const Field& f) {
    json j{{"p", f.characteristic()}, {"m", f.degree()}};
    if (f.degree() > 1) j["poly"] = f.reduction_poly();
    return j;
}

FieldRef field_from_json(const json& j) {
    expect_object(j, "field");
    reject_unknown(j, {"p", "m", "poly"}, "field");
    auto p = static_cast<std::uint32_t>(as_uint(require(j, "p", "field"), "field.p"));
    std::uint32_t m = 1, poly = 0;
    if (j.contains("m")) m = static_cast<std::uint32_t>(as_uint(j["m"], "field.m"));
    if (j.contains("poly")) poly = static_cast<std::uint32_t>(as_uint(j["poly"], "field.poly"));
    if (m == 1 && poly != 0)
        fail(ErrorCode::SchemaViolation, "field: poly is only meaningful for m > 1");
    return Field::make(p, m, poly);
}

namespace {

json node_to_json(const Node& n) {
    json j{{"id", n.id}, {"kind", node_kind_name(n.kind)}};
    if (n.kind == NodeKind::Intermediate) {
        if (n.variant == VariantKind::V1) j["variant"] = "variant1";
        else if (n.variant == VariantKind::V2) j["variant"] = "variant2";
        else j["variant"] = json{{"hybrid", n.hybrid_h}};
    }
    return j;
}

Node node_from_json(const json& j) {
    expect_object(j, "node");
    reject_unknown(j, {"id", "kind", "variant"}, "node");
    Node n;
    n.id = as_string(require(j, "id", "node"), "node.id");
    std::string kind = as_string(require(j, "kind", "node"), "node.kind");
    if (kind == "source") n.kind = NodeKind::Source;
    else if (kind == "intermediate") n.kind = NodeKind::Intermediate;
    else if (kind == "siso") n.kind = NodeKind::Siso;
    else if (kind == "destination") n.kind = NodeKind::Destination;
    else fail(ErrorCode::SchemaViolation, "node '" + n.id + "': unknown kind '" + kind + "'");

    if (j.contains("variant")) {
        if (n.kind != NodeKind::Intermediate)
            fail(ErrorCode::SchemaViolation,
                 "node '" + n.id + "': only intermediate nodes carry a variant");
        const json& v = j["variant"];
        if (v.is_string()) {
            if (v == "variant1") n.variant = VariantKind::V1;
            else if (v == "variant2") n.variant = VariantKind::V2;
            else fail(ErrorCode::SchemaViolation, "node '" + n.id + "': unknown variant");
        } else if (v.is_object()) {
            reject_unknown(v, {"hybrid"}, "variant");
            n.variant = VariantKind::Hybrid;
            n.hybrid_h = static_cast<int>(as_uint(require(v, "hybrid", "variant"), "hybrid h"));
        } else {
            fail(ErrorCode::SchemaViolation, "node '" + n.id + "': malformed variant");
        }
    }
    return n;
}

} // namespace

json network_to_json(const Network& net) {
    json nodes = json::array();
    for (const auto& n : net.nodes()) nodes.push_back(node_to_json(n));
    json edges = json::array();
    for (const auto& e : net.edges())
        edges.push_back(json{{"id", e.id}, {"from", e.from}, {"to", e.to}});
    json dests = json::array();
    for (const auto& d : net.destinations()) dests.push_back(json{{"node", d.node}});
    return json{{"field", field_to_json(*net.field())},
                {"nodes", nodes},
                {"edges", edges},
                {"source", net.source_id()},
                {"destinations", dests}};
}

namespace {

Network network_from_json_impl(const json& j, std::initializer_list<const char*> allowed) {
    expect_object(j, "network");
    reject_unknown(j, allowed, "network");
    FieldRef field = field_from_json(require(j, "field", "network"));

    std::vector<Node> nodes;
    for (const json& n : require(j, "nodes", "network")) nodes.push_back(node_from_json(n));

    std::vector<Edge> edges;
    for (const json& e : require(j, "edges", "network")) {
        expect_object(e, "edge");
        reject_unknown(e, {"id", "from", "to"}, "edge");
        edges.push_back({as_string(require(e, "id", "edge"), "edge.id"),
                         as_string(require(e, "from", "edge"), "edge.from"),
                         as_string(require(e, "to", "edge"), "edge.to")});
    }

    std::string source = as_string(require(j, "source", "network"), "source");
    std::vector<std::string> dests;
    for (const json& d : require(j, "destinations", "network")) {
        expect_object(d, "destination");
        reject_unknown(d, {"node"}, "destination");
        dests.push_back(as_string(require(d, "node", "destination"), "destination.node"));
    }
    return Network(field, std::move(nodes), std::move(edges), std::move(source), std::move(dests));
}

} // namespace

Network network_from_json(const json& j) {
    return network_from_json_impl(j, {"field", "nodes", "edges", "source", "destinations"});
}

json layered_to_json(const LayeredNetwork& lnet) {
    json j = network_to_json(lnet.net);
    json layers = json::object();
    for (const auto& [id, l] : lnet.layer_of) layers[id] = l;
    j["layers"] = layers;
    j["inserted"] = lnet.inserted;
    return j;
}

LayeredNetwork layered_from_json(const json& j) {
    Network net = network_from_json_impl(
        j, {"field", "nodes", "edges", "source", "destinations", "layers", "inserted"});
    ensure_valid(net);

    LayeredNetwork lnet{std::move(net), 0, {}, {}, {}, {}, {}};
    const json& layers = require(j, "layers", "layered network");
    expect_object(layers, "layers");
    for (auto it = layers.begin(); it != layers.end(); ++it) {
        int l = static_cast<int>(as_uint(it.value(), "layer index"));
        lnet.layer_of[it.key()] = l;
        lnet.layers = std::max(lnet.layers, l);
    }
    if (j.contains("inserted"))
        for (const json& id : j["inserted"]) lnet.inserted.push_back(as_string(id, "inserted id"));
    lnet.layer_nodes = derive_layer_nodes(lnet.net, lnet.layer_of, lnet.layers);
    check_layered(lnet);
    return lnet;
}

LoadedNetwork load_network_json(const json& j) {
    if (j.is_object() && j.contains("layers")) {
        LayeredNetwork lnet = layered_from_json(j);
        return {lnet.net, true, std::move(lnet)};
    }
    Network net = network_from_json(j);
    LayeredNetwork placeholder{Network(net.field(), {}, {}, "", {}), 0, {}, {}, {}, {}, {}};
    return {std::move(net), false, std::move(placeholder)};
}

json assignment_to_json(const CodingAssignment& asg) {
    json coeffs = json::array();
    for (const auto& [key, value] : asg.coefficients()) {
        json c{{"node", key.node}, {"in_edge", key.in_edge}, {"value", value}};
        c["out_edge"] = key.out_edge.empty() ? json(nullptr) : json(key.out_edge);
        coeffs.push_back(std::move(c));
    }
    return json{{"field", field_to_json(*asg.field())}, {"coeffs", coeffs}};
}

json seeded_assignment_json(const Field& f, std::uint64_t seed) {
    return json{{"field", field_to_json(f)}, {"seed", seed}, {"prng", kPrngName}};
}

CodingAssignment assignment_from_json(const json& j, const Network& net) {
    expect_object(j, "assignment");
    reject_unknown(j, {"field", "seed", "prng", "coeffs"}, "assignment");
    if (j.contains("field")) {
        FieldRef f = field_from_json(j["field"]);
        if (!f->same(*net.field()))
            fail(ErrorCode::FieldMismatch, "assignment field differs from network field");
    }

    if (j.contains("seed")) {
        if (j.contains("coeffs"))
            fail(ErrorCode::SchemaViolation, "assignment: give either seed or coeffs, not both");
        if (j.contains("prng") && as_string(j["prng"], "prng") != kPrngName)
            fail(ErrorCode::SchemaViolation,
                 std::string("assignment: unsupported prng (expected ") + kPrngName + ")");
        return assign_random(net, as_uint(j["seed"], "assignment.seed"));
    }

    CodingAssignment asg(net.field());
    for (const json& c : require(j, "coeffs", "assignment")) {
        expect_object(c, "coefficient");
        reject_unknown(c, {"node", "in_edge", "out_edge", "value"}, "coefficient");
        std::string out_edge;
        if (c.contains("out_edge") && !c["out_edge"].is_null())
            out_edge = as_string(c["out_edge"], "coefficient.out_edge");
        asg.set(as_string(require(c, "node", "coefficient"), "coefficient.node"),
                as_string(require(c, "in_edge", "coefficient"), "coefficient.in_edge"), out_edge,
                static_cast<std::uint16_t>(as_uint(require(c, "value", "coefficient"), "value")));
    }
    asg.check(net);
    return asg;
}

json matrix_to_json(const Matrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix matrix_from_json(const json& j, FieldRef field) {
    expect_object(j, "matrix");
    reject_unknown(j, {"rows", "cols", "data"}, "matrix");
    auto rows = as_uint(require(j, "rows", "matrix"), "matrix.rows");
    auto cols = as_uint(require(j, "cols", "matrix"), "matrix.cols");
    std::vector<std::uint16_t> data;
    for (const json& v : require(j, "data", "matrix"))
        data.push_back(static_cast<std::uint16_t>(as_uint(v, "matrix entry")));
    return Matrix(std::move(field), rows, cols, std::move(data));
}

json channel_to_json(const ChannelMatrix& cm) {
    json j = matrix_to_json(cm.mat);
    j["row_labels"] = cm.row_labels;
    j["col_labels"] = cm.col_labels;
    return j;
}

json conversion_map_to_json(const ConversionMap& map) {
    json nodes = json::object(), edges = json::object();
    for (const auto& [k, v] : map.nodes) nodes[k] = v;
    for (const auto& [k, v] : map.edges) edges[k] = v;
    return json{{"nodes", nodes}, {"edges", edges}, {"relays", map.relays}};
}

json validation_to_json(const ValidationReport& rep) {
    json issues = json::array();
    for (const auto& i : rep.issues)
        issues.push_back(json{{"code", error_code_name(i.code)}, {"message", i.message}});
    return json{{"ok", rep.ok()}, {"issues", issues}};
}

json mincut_report_to_json(const MincutReport& rep) {
    return json{{"destination", rep.destination}, {"field_order", rep.field_order},
                {"trials", rep.trials},           {"max_rank", rep.max_rank},
                {"per_layer_ranks", rep.per_layer_ranks}, {"upper_bound", rep.upper_bound},
                {"maxflow", rep.maxflow}};
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::SchemaViolation, "malformed JSON");
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::Io, "cannot write '" + tmp + "'");
        out << content;
        if (!out.flush()) fail(ErrorCode::Io, "write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        fail(ErrorCode::Io, "cannot move '" + tmp + "' into place");
}

} // namespace lnc
