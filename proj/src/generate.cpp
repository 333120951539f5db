#include "lnc/generate.hpp"

#include <algorithm>

namespace lnc {

namespace {

std::size_t range(SplitMix64& rng, std::size_t lo, std::size_t hi) {
    return lo + rng.below(hi - lo + 1);
}

bool chance(SplitMix64& rng, double p) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53 < p;
}

} // namespace

Network random_dag(const DagParams& params, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::size_t m = range(rng, params.min_nodes, params.max_nodes);

    std::vector<Node> nodes;
    nodes.push_back({"S", NodeKind::Source, VariantKind::V1, 0});
    for (std::size_t i = 1; i <= m; ++i) {
        Node n{"v" + std::to_string(i), NodeKind::Intermediate, params.variant, 0};
        if (params.mixed_variants) {
            switch (rng.below(3)) {
                case 0: n.variant = VariantKind::V1; break;
                case 1: n.variant = VariantKind::V2; break;
                default: n.variant = VariantKind::Hybrid; break;
            }
        }
        nodes.push_back(n);
    }

    std::vector<Edge> edges;
    std::size_t eid = 0;
    auto add_edge = [&](const std::string& from, const std::string& to) {
        edges.push_back({"e" + std::to_string(++eid), from, to});
    };

    // Nodes are created in topological position order, so forward edges
    // keep the graph acyclic by construction.
    std::vector<std::vector<bool>> linked(m + 1, std::vector<bool>(m + 1, false));
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = i + 1; j <= m; ++j)
            if (chance(rng, params.edge_prob)) {
                linked[i][j] = true;
                add_edge(nodes[i].id, nodes[j].id);
            }

    // Reachability: anything without an input reads the source directly.
    for (std::size_t j = 1; j <= m; ++j) {
        bool has_in = false;
        for (std::size_t i = 1; i < j; ++i) has_in |= linked[i][j];
        if (!has_in || (j == 1)) add_edge("S", nodes[j].id);
        else if (chance(rng, 0.25)) add_edge("S", nodes[j].id);
    }

    std::vector<std::string> dest_ids;
    std::vector<std::size_t> out_deg(m + 1, 0);
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = i + 1; j <= m; ++j)
            if (linked[i][j]) ++out_deg[i];

    for (std::size_t k = 1; k <= params.destinations; ++k) {
        std::string id = "D" + std::to_string(k);
        nodes.push_back({id, NodeKind::Destination, VariantKind::V1, 0});
        dest_ids.push_back(id);
    }
    // Sinks feed the first destination; every destination gets extra taps.
    for (std::size_t i = 1; i <= m; ++i)
        if (out_deg[i] == 0) add_edge(nodes[i].id, dest_ids[0]);
    for (std::size_t k = 0; k < params.destinations; ++k) {
        std::set<std::string> tapped;
        for (const auto& e : edges)
            if (e.to == dest_ids[k]) tapped.insert(e.from);
        std::size_t extra = range(rng, tapped.empty() ? 1 : 0, 2);
        for (std::size_t t = 0; t < extra || tapped.empty(); ++t) {
            std::string from = "v" + std::to_string(range(rng, 1, m));
            if (tapped.insert(from).second) add_edge(from, dest_ids[k]);
            if (t > 4) break;
        }
    }

    // Hybrid h needs the final out-degree.
    Network draft(params.field, nodes, edges, "S", dest_ids);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].variant != VariantKind::Hybrid) continue;
        std::size_t d = draft.out_degree(*draft.node_index(nodes[i].id));
        if (d < 2) {
            nodes[i].variant = VariantKind::V1;
        } else {
            nodes[i].hybrid_h = static_cast<int>(range(rng, 1, d));
        }
    }

    Network net(params.field, std::move(nodes), std::move(edges), "S", dest_ids);
    ensure_valid(net);
    return net;
}

LayeredNetwork random_layered(const LayeredParams& params, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::size_t L = range(rng, params.min_layers, params.max_layers);
    std::vector<std::size_t> width(L);
    for (auto& w : width) w = range(rng, params.min_width, params.max_width);
    if (params.square) {
        // All layers at least n wide so the identity backbone reaches the end.
        std::size_t n = std::max<std::size_t>(width[0], 2);
        width[0] = n;
        for (auto& w : width) w = std::max(w, n);
    }

    auto node_id = [](std::size_t l, std::size_t j) {
        return "L" + std::to_string(l + 1) + "n" + std::to_string(j + 1);
    };

    std::vector<Node> nodes;
    nodes.push_back({"S", NodeKind::Source, VariantKind::V1, 0});
    for (std::size_t l = 0; l < L; ++l)
        for (std::size_t j = 0; j < width[l]; ++j)
            nodes.push_back({node_id(l, j), NodeKind::Intermediate, VariantKind::V1, 0});

    std::vector<Edge> edges;
    std::size_t eid = 0;
    auto add_edge = [&](const std::string& from, const std::string& to) {
        edges.push_back({"e" + std::to_string(++eid), from, to});
    };
    for (std::size_t j = 0; j < width[0]; ++j) add_edge("S", node_id(0, j));

    for (std::size_t l = 0; l + 1 < L; ++l) {
        std::vector<std::vector<bool>> linked(width[l], std::vector<bool>(width[l + 1], false));
        if (params.square) {
            for (std::size_t j = 0; j < std::min(width[l], width[l + 1]); ++j) linked[j][j] = true;
        }
        // Every next-layer node needs an input, every current node an output.
        for (std::size_t i = 0; i < width[l + 1]; ++i) {
            bool has = false;
            for (std::size_t j = 0; j < width[l]; ++j) has |= linked[j][i];
            if (!has) linked[rng.below(width[l])][i] = true;
        }
        for (std::size_t j = 0; j < width[l]; ++j) {
            bool has = false;
            for (std::size_t i = 0; i < width[l + 1]; ++i) has |= linked[j][i];
            if (!has) linked[j][rng.below(width[l + 1])] = true;
        }
        for (std::size_t j = 0; j < width[l]; ++j)
            for (std::size_t i = 0; i < width[l + 1]; ++i) {
                if (!linked[j][i] && chance(rng, params.extra_edge_prob)) linked[j][i] = true;
                if (linked[j][i]) add_edge(node_id(l, j), node_id(l + 1, i));
            }
    }

    std::vector<std::string> dest_ids;
    for (std::size_t k = 1; k <= params.destinations; ++k) {
        std::string id = "D" + std::to_string(k);
        nodes.push_back({id, NodeKind::Destination, VariantKind::V1, 0});
        dest_ids.push_back(id);
        bool whole_layer = params.tap_all && k == 1;
        std::size_t taps = whole_layer ? width[L - 1]
                                       : params.square ? width[0] : range(rng, 1, width[L - 1]);
        // Distinct last-layer nodes in position order; square mode taps the
        // backbone columns so the channel stays structurally invertible.
        std::vector<std::size_t> pool(width[L - 1]);
        for (std::size_t j = 0; j < pool.size(); ++j) pool[j] = j;
        if (!params.square && !whole_layer)
            for (std::size_t j = pool.size(); j > 1; --j)
                std::swap(pool[j - 1], pool[rng.below(j)]);
        for (std::size_t t = 0; t < taps; ++t) add_edge(node_id(L - 1, pool[t]), id);
    }

    Network net(params.field, std::move(nodes), std::move(edges), "S", dest_ids);
    LayeredNetwork lnet = layer(net);
    if (!lnet.inserted.empty())
        fail(ErrorCode::InvalidNetwork, "generator produced a non-layered instance");
    return lnet;
}

} // namespace lnc
