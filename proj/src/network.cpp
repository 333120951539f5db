#include "lnc/network.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace lnc {

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Source: return "source";
        case NodeKind::Intermediate: return "intermediate";
        case NodeKind::Siso: return "siso";
        case NodeKind::Destination: return "destination";
    }
    return "?";
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i) out << "; ";
        out << error_code_name(issues[i].code) << ": " << issues[i].message;
    }
    return out.str();
}

Network::Network(FieldRef field, std::vector<Node> nodes, std::vector<Edge> edges,
                 std::string source, std::vector<std::string> destinations)
    : field_(std::move(field)), nodes_(std::move(nodes)), edges_(std::move(edges)),
      source_(std::move(source)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (!node_idx_.emplace(nodes_[i].id, i).second) duplicate_node_ids_ = true;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (!edge_idx_.emplace(edges_[i].id, i).second) duplicate_edge_ids_ = true;

    in_.assign(nodes_.size(), {});
    out_.assign(nodes_.size(), {});
    tail_.assign(edges_.size(), SIZE_MAX);
    head_.assign(edges_.size(), SIZE_MAX);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto t = node_index(edges_[e].from);
        auto h = node_index(edges_[e].to);
        if (!t || !h) {
            dangling_edges_ = true;
            continue;
        }
        tail_[e] = *t;
        head_[e] = *h;
        out_[*t].push_back(e);
        in_[*h].push_back(e);
    }

    for (const auto& d : destinations) {
        DestinationSpec spec;
        spec.node = d;
        if (auto idx = node_index(d)) {
            for (std::size_t e : in_[*idx]) spec.taps.push_back(edges_[e].id);
        }
        destinations_.push_back(std::move(spec));
    }
}

std::optional<std::size_t> Network::node_index(const std::string& id) const {
    auto it = node_idx_.find(id);
    if (it == node_idx_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Network::edge_index(const std::string& id) const {
    auto it = edge_idx_.find(id);
    if (it == edge_idx_.end()) return std::nullopt;
    return it->second;
}

const std::vector<std::size_t>& Network::source_out_edges() const {
    static const std::vector<std::size_t> empty;
    auto s = node_index(source_);
    return s ? out_[*s] : empty;
}

std::vector<std::size_t> Network::topo_order() const {
    std::vector<std::size_t> indeg(nodes_.size(), 0);
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (head_[e] != SIZE_MAX) ++indeg[head_[e]];

    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (indeg[i] == 0) ready.push(i);

    std::vector<std::size_t> order;
    order.reserve(nodes_.size());
    while (!ready.empty()) {
        std::size_t u = ready.top();
        ready.pop();
        order.push_back(u);
        for (std::size_t e : out_[u]) {
            if (head_[e] == SIZE_MAX) continue;
            if (--indeg[head_[e]] == 0) ready.push(head_[e]);
        }
    }
    if (order.size() != nodes_.size()) fail(ErrorCode::CycleDetected, "network contains a cycle");
    return order;
}

ValidationReport validate(const Network& net) {
    ValidationReport rep;
    auto add = [&](ErrorCode c, const std::string& m) { rep.issues.push_back({c, m}); };

    if (net.duplicate_node_ids_) add(ErrorCode::InvalidNetwork, "duplicate node id");
    if (net.duplicate_edge_ids_) add(ErrorCode::InvalidNetwork, "duplicate edge id");
    if (net.dangling_edges_) add(ErrorCode::UnknownNode, "edge endpoint refers to unknown node");
    if (!rep.ok()) return rep; // index-based checks below need sane ids

    // Parallel edges: one coefficient slot exists per (tail, head) pair.
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
        auto key = std::make_pair(net.tail_index(e), net.head_index(e));
        if (!seen.insert(key).second)
            add(ErrorCode::InvalidNetwork,
                "ParallelEdge: duplicate edge " + net.edge(e).from + " -> " + net.edge(e).to);
    }

    auto src = net.node_index(net.source_id());
    if (!src) {
        add(ErrorCode::InvalidNetwork, "source node '" + net.source_id() + "' not found");
    } else {
        if (net.node(*src).kind != NodeKind::Source)
            add(ErrorCode::InvalidNetwork, "declared source is not of kind source");
        if (net.in_degree(*src) != 0)
            add(ErrorCode::InvalidNetwork, "source has incoming edges");
        if (net.out_degree(*src) == 0)
            add(ErrorCode::InvalidNetwork, "source has no outgoing edges");
    }
    std::size_t source_kind_count = 0;
    for (const auto& n : net.nodes())
        if (n.kind == NodeKind::Source) ++source_kind_count;
    if (source_kind_count != 1)
        add(ErrorCode::InvalidNetwork,
            "expected exactly one source node, found " + std::to_string(source_kind_count));

    std::set<std::string> listed;
    for (const auto& d : net.destinations()) {
        if (!listed.insert(d.node).second)
            add(ErrorCode::InvalidNetwork, "destination '" + d.node + "' listed twice");
        auto idx = net.node_index(d.node);
        if (!idx) {
            add(ErrorCode::UnknownDestination, "destination '" + d.node + "' not found");
            continue;
        }
        if (net.node(*idx).kind != NodeKind::Destination)
            add(ErrorCode::InvalidNetwork, "destination '" + d.node + "' is not of kind destination");
        if (net.out_degree(*idx) != 0)
            add(ErrorCode::InvalidNetwork, "destination '" + d.node + "' has outgoing edges");
        if (d.taps.empty())
            add(ErrorCode::InvalidNetwork, "destination '" + d.node + "' has no incoming edges");
    }
    for (const auto& n : net.nodes()) {
        if (n.kind == NodeKind::Destination && !listed.count(n.id))
            add(ErrorCode::InvalidNetwork, "destination node '" + n.id + "' missing from list");
    }

    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
        const Node& n = net.node(i);
        if (n.kind == NodeKind::Siso && (net.in_degree(i) != 1 || net.out_degree(i) != 1))
            add(ErrorCode::InvalidNetwork, "siso node '" + n.id + "' must have in=out=1");
        if (n.kind == NodeKind::Intermediate && n.variant == VariantKind::Hybrid) {
            if (n.hybrid_h < 1 || static_cast<std::size_t>(n.hybrid_h) > net.out_degree(i))
                add(ErrorCode::InvalidNetwork,
                    "hybrid '" + n.id + "': h must lie in 1..out-degree");
        }
    }

    try {
        net.topo_order();
    } catch (const Error&) {
        add(ErrorCode::CycleDetected, "network contains a cycle");
    }
    return rep;
}

void ensure_valid(const Network& net) {
    auto rep = validate(net);
    if (!rep.ok()) fail(ErrorCode::InvalidNetwork, rep.summary());
}

std::vector<std::string> ancestral_order(const Network& net) {
    std::vector<std::size_t> indeg(net.nodes().size(), 0);
    for (std::size_t e = 0; e < net.edges().size(); ++e) ++indeg[net.head_index(e)];

    auto cmp = [&](std::size_t a, std::size_t b) { return net.node(a).id > net.node(b).id; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> ready(cmp);
    for (std::size_t i = 0; i < net.nodes().size(); ++i)
        if (indeg[i] == 0) ready.push(i);

    std::vector<std::string> order;
    order.reserve(net.nodes().size());
    while (!ready.empty()) {
        std::size_t u = ready.top();
        ready.pop();
        order.push_back(net.node(u).id);
        for (std::size_t e : net.out_edges(u))
            if (--indeg[net.head_index(e)] == 0) ready.push(net.head_index(e));
    }
    if (order.size() != net.nodes().size())
        fail(ErrorCode::CycleDetected, "no ancestral ordering exists");
    return order;
}

std::vector<std::string> coding_points(const Network& net) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < net.nodes().size(); ++i)
        if (!net.is_destination(i) && net.in_degree(i) >= 2) out.push_back(net.node(i).id);
    return out;
}

std::set<std::size_t> path_length_spectrum(const Network& net, const std::string& target) {
    auto tgt = net.node_index(target);
    if (!tgt) fail(ErrorCode::UnknownNode, "target '" + target + "'");
    auto src = net.node_index(net.source_id());
    if (!src) fail(ErrorCode::InvalidNetwork, "source missing");

    std::vector<std::set<std::size_t>> lengths(net.nodes().size());
    lengths[*src].insert(0);
    for (std::size_t u : net.topo_order()) {
        if (lengths[u].empty()) continue;
        for (std::size_t e : net.out_edges(u))
            for (std::size_t l : lengths[u]) lengths[net.head_index(e)].insert(l + 1);
    }
    return lengths[*tgt];
}

} // namespace lnc
