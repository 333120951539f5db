#include "lnc/transform.hpp"

#include <algorithm>
#include <set>

namespace lnc {

namespace {

/// Claims ids derived from a base name, bumping a counter on collision.
class IdAllocator {
  public:
    explicit IdAllocator(std::set<std::string> used) : used_(std::move(used)) {}

    std::string claim(const std::string& base) {
        std::string id = base;
        int bump = 2;
        while (!used_.insert(id).second) id = base + "_" + std::to_string(bump++);
        return id;
    }

  private:
    std::set<std::string> used_;
};

std::set<std::string> node_ids(const Network& net) {
    std::set<std::string> ids;
    for (const auto& n : net.nodes()) ids.insert(n.id);
    return ids;
}

std::set<std::string> edge_ids(const Network& net) {
    std::set<std::string> ids;
    for (const auto& e : net.edges()) ids.insert(e.id);
    return ids;
}

std::vector<std::string> destination_ids(const Network& net) {
    std::vector<std::string> ids;
    for (const auto& d : net.destinations()) ids.push_back(d.node);
    return ids;
}

} // namespace

std::vector<std::vector<std::size_t>> out_groups(const Network& net, std::size_t node) {
    const auto& outs = net.out_edges(node);
    const Node& n = net.node(node);
    std::vector<std::vector<std::size_t>> groups;
    if (n.kind != NodeKind::Intermediate || n.variant == VariantKind::V1 || outs.empty()) {
        if (!outs.empty()) groups.push_back(outs);
        return groups;
    }
    std::size_t h = n.variant == VariantKind::V2 ? outs.size()
                                                 : static_cast<std::size_t>(n.hybrid_h);
    h = std::min(h, outs.size());
    groups.resize(h);
    for (std::size_t g = 0; g < h; ++g) {
        std::size_t begin = g * outs.size() / h;
        std::size_t end = (g + 1) * outs.size() / h;
        groups[g].assign(outs.begin() + begin, outs.begin() + end);
    }
    return groups;
}

ConversionResult to_variant1(const Network& net) {
    ensure_valid(net);
    auto src = *net.node_index(net.source_id());

    // A node is split iff it emits more than one distinct symbol.
    std::vector<std::size_t> group_count(net.nodes().size(), 1);
    std::vector<bool> split(net.nodes().size(), false);
    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
        if (net.node(i).kind != NodeKind::Intermediate) continue;
        group_count[i] = out_groups(net, i).size();
        split[i] = group_count[i] > 1;
    }

    IdAllocator node_alloc(node_ids(net));
    IdAllocator edge_alloc(edge_ids(net));
    ConversionMap map;

    // aux_ids[i][g] is the node the g-th output group of node i moved to.
    std::vector<std::vector<std::string>> aux_ids(net.nodes().size());
    std::vector<Node> new_nodes;
    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
        const Node& n = net.node(i);
        if (!split[i]) {
            Node kept = n;
            if (kept.kind == NodeKind::Intermediate) {
                kept.variant = VariantKind::V1; // single output group
                kept.hybrid_h = 0;
            }
            new_nodes.push_back(kept);
            aux_ids[i] = {n.id};
            map.nodes[n.id] = {n.id};
            continue;
        }
        for (std::size_t g = 0; g < group_count[i]; ++g) {
            std::string id = node_alloc.claim(n.id + "#" + std::to_string(g + 1));
            new_nodes.push_back({id, NodeKind::Intermediate, VariantKind::V1, 0});
            aux_ids[i].push_back(id);
        }
        map.nodes[n.id] = aux_ids[i];
    }

    // group_of_edge[e] = which output group of its tail edge e belongs to.
    std::vector<std::size_t> group_of_edge(net.edges().size(), 0);
    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
        auto groups = out_groups(net, i);
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (std::size_t e : groups[g]) group_of_edge[e] = g;
    }

    std::vector<Edge> new_edges;
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
        const Edge& edge = net.edge(e);
        std::size_t tail = net.tail_index(e);
        std::size_t head = net.head_index(e);
        std::string tail_id = split[tail] ? aux_ids[tail][group_of_edge[e]] : edge.from;

        if (!split[head]) {
            new_edges.push_back({edge.id, tail_id, edge.to});
            map.edges[edge.id] = {edge.id};
            continue;
        }
        // Every auxiliary of the head receives its own copy of this input.
        // A copy of a source edge would change the source out-degree, so the
        // fan-out happens behind an identical-output relay instead.
        if (tail == src) {
            std::string relay = node_alloc.claim(edge.id + "#relay");
            new_nodes.push_back({relay, NodeKind::Intermediate, VariantKind::V1, 0});
            map.relays.push_back(relay);
            new_edges.push_back({edge.id, edge.from, relay});
            map.edges[edge.id] = {edge.id};
            tail_id = relay;
        } else {
            map.edges[edge.id] = {};
        }
        for (std::size_t g = 0; g < group_count[head]; ++g) {
            std::string id = edge_alloc.claim(edge.id + "#" + std::to_string(g + 1));
            new_edges.push_back({id, tail_id, aux_ids[head][g]});
            map.edges[edge.id].push_back(id);
        }
    }

    // Copying a delay node's output to several auxiliaries turns it into a
    // broadcast node; reclassify so the degree rules keep holding. Its
    // pass-through behavior survives as a transported unit coefficient.
    std::map<std::string, std::size_t> fan_out;
    for (const auto& e : new_edges) ++fan_out[e.from];
    for (auto& n : new_nodes)
        if (n.kind == NodeKind::Siso && fan_out[n.id] > 1) n.kind = NodeKind::Intermediate;

    Network out(net.field(), std::move(new_nodes), std::move(new_edges), net.source_id(),
                destination_ids(net));
    ensure_valid(out);
    return {std::move(out), std::move(map)};
}

std::vector<std::vector<std::string>> derive_layer_nodes(const Network& net,
                                                         const std::map<std::string, int>& layer_of,
                                                         int layers) {
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(layers));
    // Layer 1 in source out-edge order: position j holds the node fed by
    // source symbol j.
    std::set<std::string> first;
    for (std::size_t e : net.source_out_edges()) {
        const std::string& head = net.edge(e).to;
        auto it = layer_of.find(head);
        if (it == layer_of.end() || it->second != 1)
            fail(ErrorCode::NotLayered, "source edge '" + net.edge(e).id + "' does not feed layer 1");
        if (!first.insert(head).second)
            fail(ErrorCode::NotLayered, "two source edges feed node '" + head + "'");
        out[0].push_back(head);
    }
    std::size_t layer1_count = 0;
    for (const auto& n : net.nodes()) {
        auto it = layer_of.find(n.id);
        if (it == layer_of.end()) continue;
        if (it->second < 1 || it->second > layers)
            fail(ErrorCode::NotLayered, "node '" + n.id + "' has layer out of range");
        if (it->second == 1) {
            ++layer1_count;
            continue;
        }
        out[static_cast<std::size_t>(it->second) - 1].push_back(n.id);
    }
    if (layer1_count != out[0].size())
        fail(ErrorCode::NotLayered, "layer-1 nodes are not exactly the source edge heads");
    return out;
}

LayeredNetwork layer(const Network& net) {
    ensure_valid(net);
    auto src = *net.node_index(net.source_id());

    // Longest edge distance from the source; also detects unreachable nodes,
    // which have no defined layer.
    std::vector<int> dist(net.nodes().size(), -1);
    dist[src] = 0;
    for (std::size_t u : net.topo_order()) {
        if (dist[u] < 0) continue;
        for (std::size_t e : net.out_edges(u)) {
            std::size_t v = net.head_index(e);
            if (net.is_destination(v)) continue;
            dist[v] = std::max(dist[v], dist[u] + 1);
        }
    }
    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
        if (dist[i] >= 0 || net.is_source(i)) continue;
        if (net.is_destination(i)) {
            bool reachable = false;
            for (std::size_t e : net.in_edges(i))
                reachable |= dist[net.tail_index(e)] >= 0;
            if (reachable) continue;
        }
        fail(ErrorCode::Unreachable, "node '" + net.node(i).id + "' has no path from the source");
    }

    int L = 1;
    for (std::size_t i = 0; i < net.nodes().size(); ++i)
        if (!net.is_source(i) && !net.is_destination(i)) L = std::max(L, dist[i]);

    std::vector<Node> new_nodes = net.nodes();
    std::vector<Edge> new_edges;
    IdAllocator node_alloc(node_ids(net));
    IdAllocator edge_alloc(edge_ids(net));
    std::vector<std::string> inserted;
    std::map<std::string, std::string> inserted_on;
    std::map<std::string, std::vector<std::string>> chains;

    std::map<std::string, int> layer_of;
    for (std::size_t i = 0; i < net.nodes().size(); ++i)
        if (!net.is_source(i) && !net.is_destination(i)) layer_of[net.node(i).id] = dist[i];

    for (std::size_t e = 0; e < net.edges().size(); ++e) {
        const Edge& edge = net.edge(e);
        std::size_t tail = net.tail_index(e);
        std::size_t head = net.head_index(e);
        int from_layer = net.is_source(tail) ? 0 : dist[tail];
        int to_layer = net.is_destination(head) ? L + 1 : dist[head];
        int relays = to_layer - from_layer - 1; // delay nodes to insert on this edge

        std::string prev = edge.from;
        auto& chain = chains[edge.id];
        for (int t = 1; t <= relays; ++t) {
            std::string id = node_alloc.claim(edge.id + "~" + std::to_string(t));
            new_nodes.push_back({id, NodeKind::Siso, VariantKind::V1, 0});
            layer_of[id] = from_layer + t;
            inserted.push_back(id);
            inserted_on[id] = edge.id;
            std::string seg = edge_alloc.claim(edge.id + "~s" + std::to_string(t));
            new_edges.push_back({seg, prev, id});
            chain.push_back(seg);
            prev = id;
        }
        // The final hop keeps the original edge id, so destination tap order
        // and receiver-side coefficient keys survive the rewrite.
        new_edges.push_back({edge.id, prev, edge.to});
        chain.push_back(edge.id);
    }

    Network out(net.field(), std::move(new_nodes), std::move(new_edges), net.source_id(),
                destination_ids(net));
    ensure_valid(out);

    LayeredNetwork lnet{std::move(out), L, std::move(layer_of), {}, std::move(inserted),
                        std::move(inserted_on), std::move(chains)};
    lnet.layer_nodes = derive_layer_nodes(lnet.net, lnet.layer_of, L);
    check_layered(lnet);
    return lnet;
}

void check_layered(const LayeredNetwork& lnet) {
    const Network& net = lnet.net;
    if (lnet.layers < 1) fail(ErrorCode::NotLayered, "layer count must be >= 1");
    if (lnet.layer_nodes.size() != static_cast<std::size_t>(lnet.layers))
        fail(ErrorCode::NotLayered, "layer listing does not match layer count");

    std::map<std::string, int> seen;
    for (int l = 1; l <= lnet.layers; ++l)
        for (const auto& id : lnet.layer_nodes[static_cast<std::size_t>(l) - 1]) {
            if (!seen.emplace(id, l).second)
                fail(ErrorCode::NotLayered, "node '" + id + "' listed in two layers");
            auto it = lnet.layer_of.find(id);
            if (it == lnet.layer_of.end() || it->second != l)
                fail(ErrorCode::NotLayered, "node '" + id + "' layer mismatch");
        }

    auto layer_or_fail = [&](const std::string& id) {
        auto it = seen.find(id);
        if (it == seen.end()) fail(ErrorCode::NotLayered, "node '" + id + "' has no layer");
        return it->second;
    };

    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
        const Node& n = net.node(i);
        if (n.kind == NodeKind::Source || n.kind == NodeKind::Destination) continue;
        layer_or_fail(n.id);
    }

    for (std::size_t e = 0; e < net.edges().size(); ++e) {
        std::size_t tail = net.tail_index(e), head = net.head_index(e);
        int from_layer = net.is_source(tail) ? 0 : layer_or_fail(net.node(tail).id);
        int to_layer = net.is_destination(head) ? lnet.layers + 1 : layer_or_fail(net.node(head).id);
        if (to_layer != from_layer + 1)
            fail(ErrorCode::NotLayered,
                 "edge '" + net.edge(e).id + "' spans layers " + std::to_string(from_layer) +
                     " -> " + std::to_string(to_layer));
    }

    if (lnet.layer_nodes[0].size() != net.source_degree())
        fail(ErrorCode::NotLayered, "layer 1 width differs from source out-degree");
    for (const auto& id : lnet.layer_nodes[0]) {
        auto idx = *net.node_index(id);
        if (net.in_degree(idx) != 1 || !net.is_source(net.tail_index(net.in_edges(idx)[0])))
            fail(ErrorCode::NotLayered, "layer-1 node '" + id + "' must read exactly one source edge");
    }
}

LayeringCost layering_cost(const Network& net) {
    LayeringCost cost;
    std::size_t total_in = 0;
    for (const auto& id : coding_points(net)) {
        ++cost.coding_points;
        total_in += net.in_degree(*net.node_index(id));
    }
    if (cost.coding_points > 0)
        cost.avg_in_degree = static_cast<double>(total_in) / static_cast<double>(cost.coding_points);
    return cost;
}

} // namespace lnc
