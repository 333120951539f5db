#include "lnc/analysis.hpp"

#include <algorithm>
#include <queue>

namespace lnc {

Pattern Pattern::from_matrix(const Matrix& m) {
    Pattern p;
    p.rows = m.rows();
    p.cols = m.cols();
    p.mask.resize(p.rows * p.cols, 0);
    for (std::size_t r = 0; r < p.rows; ++r)
        for (std::size_t c = 0; c < p.cols; ++c)
            if (m.at(r, c) != 0) p.mask[r * p.cols + c] = 1;
    return p;
}

namespace {

bool try_augment(const Pattern& p, std::size_t row, std::vector<std::size_t>& match_col,
                 std::vector<std::uint8_t>& visited) {
    for (std::size_t c = 0; c < p.cols; ++c) {
        if (!p.at(row, c) || visited[c]) continue;
        visited[c] = 1;
        if (match_col[c] == SIZE_MAX || try_augment(p, match_col[c], match_col, visited)) {
            match_col[c] = row;
            return true;
        }
    }
    return false;
}

} // namespace

std::size_t structural_rank(const Pattern& pattern) {
    std::vector<std::size_t> match_col(pattern.cols, SIZE_MAX);
    std::size_t matched = 0;
    for (std::size_t r = 0; r < pattern.rows; ++r) {
        std::vector<std::uint8_t> visited(pattern.cols, 0);
        if (try_augment(pattern, r, match_col, visited)) ++matched;
    }
    return matched;
}

Pattern interlayer_pattern(const LayeredNetwork& lnet, int l) {
    if (l < 1 || l >= lnet.layers)
        fail(ErrorCode::InvalidArgument, "layer index " + std::to_string(l) + " out of range");
    const Network& net = lnet.net;
    const auto& from = lnet.layer_nodes[static_cast<std::size_t>(l) - 1];
    const auto& to = lnet.layer_nodes[static_cast<std::size_t>(l)];

    Pattern p;
    p.rows = to.size();
    p.cols = from.size();
    p.mask.assign(p.rows * p.cols, 0);
    std::map<std::string, std::size_t> col;
    for (std::size_t j = 0; j < from.size(); ++j) col[from[j]] = j;
    for (std::size_t i = 0; i < to.size(); ++i) {
        std::size_t node = *net.node_index(to[i]);
        for (std::size_t e : net.in_edges(node)) {
            auto jt = col.find(net.edge(e).from);
            if (jt != col.end()) p.mask[i * p.cols + jt->second] = 1;
        }
    }
    return p;
}

std::size_t rank_mincut_estimate(const LayeredNetwork& lnet, int k, std::size_t trials,
                                 std::uint64_t seed) {
    if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
    std::size_t K = lnet.net.destinations().size();
    if (lnet.net.field()->order() <= K)
        fail(ErrorCode::FieldTooSmall, "field order must exceed the destination count " +
                                           std::to_string(K));
    SplitMix64 stream(seed);
    std::size_t best = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        CodingAssignment asg = assign_random(lnet.net, stream.next());
        best = std::max(best, mat_rank(individual_matrix(lnet, asg, k).mat));
    }
    return best;
}

std::size_t mincut_upper_bound(const LayeredNetwork& lnet, int k) {
    check_layered(lnet);
    const Network& net = lnet.net;
    if (k < 1 || static_cast<std::size_t>(k) > net.destinations().size())
        fail(ErrorCode::UnknownDestination, "destination " + std::to_string(k));
    const auto& dest = net.destinations()[static_cast<std::size_t>(k) - 1];

    // Nodes of the last layer actually read by this destination.
    std::set<std::string> tapped;
    for (const auto& tap : dest.taps) tapped.insert(net.edge(*net.edge_index(tap)).from);

    if (lnet.layers == 1) return tapped.size();

    std::size_t bound = SIZE_MAX;
    for (int l = 1; l < lnet.layers; ++l) {
        Pattern p = interlayer_pattern(lnet, l);
        if (l == lnet.layers - 1) {
            const auto& last = lnet.layer_nodes.back();
            Pattern restricted;
            restricted.cols = p.cols;
            for (std::size_t i = 0; i < last.size(); ++i) {
                if (!tapped.count(last[i])) continue;
                ++restricted.rows;
                restricted.mask.insert(restricted.mask.end(), p.mask.begin() + i * p.cols,
                                       p.mask.begin() + (i + 1) * p.cols);
            }
            p = std::move(restricted);
        }
        bound = std::min(bound, structural_rank(p));
    }
    return bound;
}

std::size_t maxflow_mincut(const Network& net, int k) {
    ensure_valid(net);
    if (k < 1 || static_cast<std::size_t>(k) > net.destinations().size())
        fail(ErrorCode::UnknownDestination, "destination " + std::to_string(k));
    std::size_t src = *net.node_index(net.source_id());
    std::size_t dst = *net.node_index(net.destinations()[static_cast<std::size_t>(k) - 1].node);

    // Edmonds-Karp with unit capacities; residual[e] is remaining forward
    // capacity, 1 - residual[e] the reverse capacity.
    std::vector<std::uint8_t> residual(net.edges().size(), 1);
    std::size_t flow = 0;
    while (true) {
        std::vector<std::pair<std::size_t, bool>> parent(net.nodes().size(),
                                                         {SIZE_MAX, true}); // (edge, forward)
        std::vector<std::uint8_t> seen(net.nodes().size(), 0);
        std::queue<std::size_t> bfs;
        bfs.push(src);
        seen[src] = 1;
        while (!bfs.empty() && !seen[dst]) {
            std::size_t u = bfs.front();
            bfs.pop();
            for (std::size_t e : net.out_edges(u)) {
                std::size_t v = net.head_index(e);
                if (!seen[v] && residual[e]) {
                    seen[v] = 1;
                    parent[v] = {e, true};
                    bfs.push(v);
                }
            }
            for (std::size_t e : net.in_edges(u)) {
                std::size_t v = net.tail_index(e);
                if (!seen[v] && !residual[e]) {
                    seen[v] = 1;
                    parent[v] = {e, false};
                    bfs.push(v);
                }
            }
        }
        if (!seen[dst]) break;
        std::size_t v = dst;
        while (v != src) {
            auto [e, forward] = parent[v];
            residual[e] = forward ? 0 : 1;
            v = forward ? net.tail_index(e) : net.head_index(e);
        }
        ++flow;
    }
    return flow;
}

MincutReport mincut_report(const Network& net, int k, std::size_t trials, std::uint64_t seed) {
    ensure_valid(net);
    if (k < 1 || static_cast<std::size_t>(k) > net.destinations().size())
        fail(ErrorCode::UnknownDestination, "destination " + std::to_string(k));

    LayeredNetwork lnet = layer(net);
    bool needs_conversion = false;
    for (const auto& n : lnet.net.nodes())
        if (n.kind == NodeKind::Intermediate && n.variant != VariantKind::V1)
            needs_conversion = true;
    if (needs_conversion) lnet = layer(to_variant1(lnet.net).network);

    MincutReport report;
    report.destination = net.destinations()[static_cast<std::size_t>(k) - 1].node;
    report.field_order = net.field()->order();
    report.trials = trials;
    report.max_rank = rank_mincut_estimate(lnet, k, trials, seed);
    for (int l = 1; l < lnet.layers; ++l)
        report.per_layer_ranks.push_back(structural_rank(interlayer_pattern(lnet, l)));
    report.upper_bound = mincut_upper_bound(lnet, k);
    report.maxflow = maxflow_mincut(net, k);
    return report;
}

} // namespace lnc
