#include "lnc/duality.hpp"

#include <algorithm>

namespace lnc {

namespace {

void require_identical_output(const Network& net) {
    for (const auto& n : net.nodes())
        if (n.kind == NodeKind::Intermediate && n.variant != VariantKind::V1)
            fail(ErrorCode::NotVariant1,
                 "node '" + n.id + "' emits distinct outputs; convert the network first");
}

void require_unit_first_hop(const LayeredNetwork& lnet, const CodingAssignment& asg) {
    const Network& net = lnet.net;
    for (std::size_t e : net.source_out_edges()) {
        std::size_t head = net.head_index(e);
        if (asg.resolve(net, head, e, SIZE_MAX) != 1)
            fail(ErrorCode::InvalidAssignment,
                 "first-hop coefficient on '" + net.edge(e).id + "' must be 1 in a layered network");
    }
}

void check_dest(const Network& net, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > net.destinations().size())
        fail(ErrorCode::UnknownDestination, "destination " + std::to_string(k));
}

} // namespace

ReversedNetwork reverse(const LayeredNetwork& lnet, const CodingAssignment& asg, int k) {
    check_layered(lnet);
    require_identical_output(lnet.net);
    const Network& net = lnet.net;
    asg.check(net);
    require_unit_first_hop(lnet, asg);
    check_dest(net, k);
    const auto& dest = net.destinations()[static_cast<std::size_t>(k) - 1];

    ReversedNetwork rev{Network(net.field(), {}, {}, dest.node, {net.source_id()}),
                        CodingAssignment(net.field()),
                        {},
                        k,
                        lnet.layers,
                        lnet.layer_nodes,
                        {},
                        dest.taps,
                        {}};
    for (std::size_t e : net.source_out_edges()) rev.read_edges.push_back(net.edge(e).id);
    for (const auto& [id, l] : lnet.layer_of) rev.rev_layer_of[id] = lnet.layers + 1 - l;

    // The linear factor an edge keeps under reversal is the coefficient its
    // forward receiver applied to it.
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
        std::size_t head = net.head_index(e);
        if (net.is_destination(head)) continue;
        rev.edge_factor[net.edge(e).id] = asg.resolve(net, head, e, SIZE_MAX);
    }

    std::vector<Node> nodes;
    for (const auto& n : net.nodes()) {
        if (n.kind == NodeKind::Source) {
            nodes.push_back({n.id, NodeKind::Destination, VariantKind::V1, 0});
        } else if (n.kind == NodeKind::Destination) {
            if (n.id == dest.node) nodes.push_back({n.id, NodeKind::Source, VariantKind::V1, 0});
            // other destinations leave the picture
        } else if (n.kind == NodeKind::Intermediate) {
            nodes.push_back({n.id, NodeKind::Intermediate, VariantKind::V2, 0});
        } else {
            nodes.push_back(n);
        }
    }

    std::vector<Edge> edges;
    std::map<std::string, std::size_t> rev_in_degree;
    for (const auto& e : net.edges()) {
        std::size_t head = *net.node_index(e.to);
        if (net.is_destination(head) && e.to != dest.node) continue;
        edges.push_back({e.id, e.to, e.from});
        ++rev_in_degree[e.from];
    }
    // A delay node whose forward output went to a dropped destination has
    // nothing to pass on backwards; it becomes a silent ordinary node.
    for (auto& n : nodes)
        if (n.kind == NodeKind::Siso && rev_in_degree[n.id] != 1)
            n = {n.id, NodeKind::Intermediate, VariantKind::V2, 0};

    rev.net = Network(net.field(), std::move(nodes), std::move(edges), dest.node,
                      {net.source_id()});
    ensure_valid(rev.net);

    // Summing and weighing swap sides: each reversed node adds up whatever
    // arrives and scales every outgoing edge by that edge's retained factor.
    for (std::size_t i = 0; i < rev.net.nodes().size(); ++i) {
        if (rev.net.node(i).kind != NodeKind::Intermediate) continue;
        for (std::size_t in : rev.net.in_edges(i))
            for (std::size_t out : rev.net.out_edges(i))
                rev.asg.set(rev.net.node(i).id, rev.net.edge(in).id, rev.net.edge(out).id,
                            rev.edge_factor.at(rev.net.edge(out).id));
    }
    rev.asg.check(rev.net);
    return rev;
}

namespace {

/// Transfer matrix of the reversed hop from forward layer l+1 down to l,
/// assembled from the reversed adjacency and the retained factors.
Matrix reversed_hop(const ReversedNetwork& rev, int l) {
    const Network& net = rev.net;
    const auto& to = rev.fwd_layer_nodes[static_cast<std::size_t>(l) - 1];   // forward layer l
    const auto& from = rev.fwd_layer_nodes[static_cast<std::size_t>(l)];     // forward layer l+1
    std::map<std::string, std::size_t> col;
    for (std::size_t j = 0; j < from.size(); ++j) col[from[j]] = j;

    Matrix m(net.field(), to.size(), from.size());
    for (std::size_t i = 0; i < to.size(); ++i) {
        std::size_t node = *net.node_index(to[i]);
        for (std::size_t e : net.in_edges(node)) {
            auto jt = col.find(net.edge(e).from);
            if (jt == col.end()) continue; // injection edges handled separately
            m.set(i, jt->second, rev.edge_factor.at(net.edge(e).id));
        }
    }
    return m;
}

} // namespace

ChannelMatrix backward_matrix(const ReversedNetwork& rev) {
    Matrix acc = Matrix::identity(rev.net.field(), rev.fwd_layer_nodes.back().size());
    for (int l = rev.layers - 1; l >= 1; --l) acc = mat_mul(reversed_hop(rev, l), acc);
    return {std::move(acc), rev.read_edges, rev.fwd_layer_nodes.back()};
}

ChannelMatrix backward_end_to_end(const ReversedNetwork& rev) {
    ChannelMatrix full = backward_matrix(rev);
    std::map<std::string, std::size_t> col;
    for (std::size_t j = 0; j < full.col_labels.size(); ++j) col[full.col_labels[j]] = j;

    Matrix m(rev.net.field(), full.mat.rows(), rev.injection_edges.size());
    for (std::size_t t = 0; t < rev.injection_edges.size(); ++t) {
        // The injection edge reversed still ends at the forward tap's tail.
        std::size_t e = *rev.net.edge_index(rev.injection_edges[t]);
        std::size_t j = col.at(rev.net.edge(e).to);
        for (std::size_t r = 0; r < m.rows(); ++r) m.set(r, t, full.mat.at(r, j));
    }
    return {std::move(m), full.row_labels, rev.injection_edges};
}

SquareReduction square_reduce(const LayeredNetwork& lnet, const CodingAssignment& asg, int k) {
    check_dest(lnet.net, k);
    ChannelMatrix ak = individual_matrix(lnet, asg, k);
    std::size_t n = lnet.net.source_degree();

    // Greedy first-independent scan in tap order via incremental elimination.
    const Field& f = *lnet.net.field();
    std::vector<std::vector<std::uint16_t>> basis; // reduced rows
    std::vector<std::size_t> pivot_col;
    std::vector<std::size_t> kept;
    for (std::size_t r = 0; r < ak.mat.rows() && kept.size() < n; ++r) {
        std::vector<std::uint16_t> row(ak.mat.cols());
        for (std::size_t c = 0; c < row.size(); ++c) row[c] = ak.mat.at(r, c);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            std::uint16_t factor = row[pivot_col[b]];
            if (factor == 0) continue;
            for (std::size_t c = 0; c < row.size(); ++c)
                row[c] = f.sub(row[c], f.mul(factor, basis[b][c]));
        }
        std::size_t pc = row.size();
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c] != 0) {
                pc = c;
                break;
            }
        if (pc == row.size()) continue; // dependent row
        std::uint16_t pinv = f.inv(row[pc]);
        for (std::size_t c = 0; c < row.size(); ++c) row[c] = f.mul(row[c], pinv);
        basis.push_back(std::move(row));
        pivot_col.push_back(pc);
        kept.push_back(r);
    }
    if (kept.size() < n)
        fail(ErrorCode::RankDeficient, "channel matrix has rank " + std::to_string(kept.size()) +
                                           " < " + std::to_string(n));

    const auto& dest = lnet.net.destinations()[static_cast<std::size_t>(k) - 1];
    std::set<std::string> keep_ids;
    SquareReduction out{kept, {}, lnet};
    for (std::size_t r : kept) {
        out.kept_taps.push_back(dest.taps[r]);
        keep_ids.insert(dest.taps[r]);
    }

    std::vector<Edge> edges;
    for (const auto& e : lnet.net.edges()) {
        if (e.to == dest.node && !keep_ids.count(e.id)) continue;
        edges.push_back(e);
    }
    std::vector<std::string> dest_ids;
    for (const auto& d : lnet.net.destinations()) dest_ids.push_back(d.node);
    out.reduced.net = Network(lnet.net.field(), lnet.net.nodes(), std::move(edges),
                              lnet.net.source_id(), std::move(dest_ids));
    out.reduced.layer_nodes = derive_layer_nodes(out.reduced.net, out.reduced.layer_of,
                                                 out.reduced.layers);
    check_layered(out.reduced);
    return out;
}

ChannelMatrix precode(const ReversedNetwork& rev, const Matrix& p) {
    ChannelMatrix map = backward_end_to_end(rev);
    std::size_t n = map.mat.rows();
    if (p.rows() != map.mat.cols() || p.cols() != n)
        fail(ErrorCode::DimensionMismatch,
             "precoder must be " + std::to_string(map.mat.cols()) + "x" + std::to_string(n));
    Matrix composed = mat_mul(map.mat, p);
    if (mat_rank(composed) != n)
        fail(ErrorCode::RankDeficient, "precoded backward map is not invertible");
    std::vector<std::string> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back("xb" + std::to_string(j + 1));
    return {std::move(composed), map.row_labels, std::move(cols)};
}

PrecodeResult precode_random(const ReversedNetwork& rev, std::uint64_t seed,
                             std::size_t max_tries) {
    SplitMix64 rng(seed);
    std::size_t n = rev.read_edges.size();
    std::size_t nk = rev.injection_edges.size();
    for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
        Matrix p = Matrix::random(rev.net.field(), nk, n, rng);
        try {
            return {p, precode(rev, p)};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RankDeficient) throw;
        }
    }
    fail(ErrorCode::RankDeficient,
         "no invertible precoder found in " + std::to_string(max_tries) + " attempts");
}

bool backward_valid(const LayeredNetwork& lnet, const CodingAssignment& asg, int k) {
    ReversedNetwork rev = reverse(lnet, asg, k);
    return mat_rank(backward_end_to_end(rev).mat) == lnet.net.source_degree();
}

} // namespace lnc
