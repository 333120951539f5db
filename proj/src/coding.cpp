#include "lnc/coding.hpp"

#include <algorithm>

namespace lnc {

namespace {

bool source_tail(const Network& net, std::size_t edge) {
    return net.is_source(net.tail_index(edge));
}

/// Required coefficient slots of one node, in draw order. Slots with an
/// implicit value (relays, source-fed in-edges) are excluded.
struct Slot {
    std::size_t in_edge;
    std::size_t group; // group index for distinct-output nodes, 0 otherwise
};

std::vector<Slot> required_slots(const Network& net, std::size_t node) {
    std::vector<Slot> slots;
    const Node& n = net.node(node);
    if (n.kind != NodeKind::Intermediate) return slots;
    // Identical-output nodes code even when nothing listens (their row still
    // appears in the interlayer matrices); distinct-output nodes have one
    // slot per (input, output group) pair, so none without outputs.
    std::size_t groups = n.variant == VariantKind::V1 ? 1 : out_groups(net, node).size();
    for (std::size_t e : net.in_edges(node)) {
        if (source_tail(net, e)) continue;
        for (std::size_t g = 0; g < groups; ++g) slots.push_back({e, g});
    }
    return slots;
}

} // namespace

void CodingAssignment::set(const std::string& node, const std::string& in_edge,
                           const std::string& out_edge, std::uint16_t value) {
    if (value >= field_->order()) fail(ErrorCode::InvalidAssignment, "coefficient out of range");
    coeffs_[{node, in_edge, out_edge}] = value;
}

std::uint16_t CodingAssignment::resolve(const Network& net, std::size_t node, std::size_t in_edge,
                                        std::size_t out_edge) const {
    const Node& n = net.node(node);
    if (n.kind == NodeKind::Siso) return 1;

    const std::string& node_id = n.id;
    const std::string& in_id = net.edge(in_edge).id;
    if (n.variant != VariantKind::V1 && out_edge != SIZE_MAX) {
        auto it = coeffs_.find({node_id, in_id, net.edge(out_edge).id});
        if (it != coeffs_.end()) return it->second;
    }
    auto it = coeffs_.find({node_id, in_id, ""});
    if (it != coeffs_.end()) return it->second;
    if (source_tail(net, in_edge)) return 1;
    fail(ErrorCode::MissingCoefficient,
         "no coefficient for node '" + node_id + "', edge '" + in_id + "'");
}

void CodingAssignment::check(const Network& net) const {
    if (!field_->same(*net.field())) fail(ErrorCode::FieldMismatch, "assignment field differs");
    for (const auto& [key, value] : coeffs_) {
        if (value >= field_->order()) fail(ErrorCode::InvalidAssignment, "coefficient out of range");
        auto node = net.node_index(key.node);
        if (!node) fail(ErrorCode::InvalidAssignment, "coefficient for unknown node '" + key.node + "'");
        auto in_edge = net.edge_index(key.in_edge);
        if (!in_edge || net.head_index(*in_edge) != *node)
            fail(ErrorCode::InvalidAssignment,
                 "'" + key.in_edge + "' is not an incoming edge of '" + key.node + "'");
        if (!key.out_edge.empty()) {
            auto out_edge = net.edge_index(key.out_edge);
            if (!out_edge || net.tail_index(*out_edge) != *node)
                fail(ErrorCode::InvalidAssignment,
                     "'" + key.out_edge + "' is not an outgoing edge of '" + key.node + "'");
        }
        const Node& owner = net.node(*node);
        if (owner.kind == NodeKind::Siso)
            fail(ErrorCode::InvalidAssignment, "relay '" + key.node + "' cannot carry coefficients");
        if (owner.kind == NodeKind::Intermediate) {
            bool per_out = owner.variant != VariantKind::V1;
            if (per_out == key.out_edge.empty())
                fail(ErrorCode::InvalidAssignment,
                     "node '" + key.node + "': coefficient key shape does not match its variant");
        }
    }

    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
        const Node& n = net.node(i);
        if (n.kind != NodeKind::Intermediate) continue;
        auto groups = out_groups(net, i);
        for (const Slot& slot : required_slots(net, i)) {
            const std::string& in_id = net.edge(slot.in_edge).id;
            if (n.variant == VariantKind::V1) {
                if (!coeffs_.count({n.id, in_id, ""}))
                    fail(ErrorCode::MissingCoefficient,
                         "node '" + n.id + "', edge '" + in_id + "'");
                continue;
            }
            // Distinct-output node: one value per out-edge, equal inside a group.
            std::uint16_t expected = 0;
            bool have = false;
            for (std::size_t e : groups[slot.group]) {
                auto it = coeffs_.find({n.id, in_id, net.edge(e).id});
                if (it == coeffs_.end())
                    fail(ErrorCode::MissingCoefficient,
                         "node '" + n.id + "', edge '" + in_id + "' -> '" + net.edge(e).id + "'");
                if (!have) {
                    expected = it->second;
                    have = true;
                } else if (it->second != expected) {
                    fail(ErrorCode::InvalidAssignment,
                         "node '" + n.id + "': group of '" + net.edge(e).id +
                             "' must share one coefficient");
                }
            }
        }
    }
}

CodingAssignment assign_random(const Network& net, std::uint64_t seed) {
    SplitMix64 rng(seed);
    CodingAssignment asg(net.field());
    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
        const Node& n = net.node(i);
        if (n.kind != NodeKind::Intermediate) continue;
        auto groups = out_groups(net, i);
        for (const Slot& slot : required_slots(net, i)) {
            std::uint16_t value = net.field()->uniform(rng);
            const std::string& in_id = net.edge(slot.in_edge).id;
            if (n.variant == VariantKind::V1) {
                asg.set(n.id, in_id, value);
            } else {
                for (std::size_t e : groups[slot.group]) asg.set(n.id, in_id, net.edge(e).id, value);
            }
        }
    }
    return asg;
}

Matrix node_matrix(const Network& net, const CodingAssignment& asg, const std::string& node) {
    auto idx = net.node_index(node);
    if (!idx) fail(ErrorCode::UnknownNode, "'" + node + "'");
    const Node& n = net.node(*idx);
    if (n.kind == NodeKind::Source || n.kind == NodeKind::Destination)
        fail(ErrorCode::InvalidArgument, "'" + node + "' does not code");
    if (n.kind == NodeKind::Siso) return Matrix::identity(net.field(), 1);

    const auto& ins = net.in_edges(*idx);
    const auto& outs = net.out_edges(*idx);
    Matrix m(net.field(), outs.size(), ins.size());
    for (std::size_t r = 0; r < outs.size(); ++r)
        for (std::size_t c = 0; c < ins.size(); ++c)
            m.set(r, c, asg.resolve(net, *idx, ins[c], outs[r]));
    return m;
}

namespace {

void require_identical_output(const Network& net) {
    for (const auto& n : net.nodes())
        if (n.kind == NodeKind::Intermediate && n.variant != VariantKind::V1)
            fail(ErrorCode::NotVariant1,
                 "node '" + n.id + "' emits distinct outputs; convert the network first");
}

} // namespace

Matrix interlayer_matrix(const LayeredNetwork& lnet, const CodingAssignment& asg, int l) {
    if (l < 1 || l >= lnet.layers)
        fail(ErrorCode::InvalidArgument, "layer index " + std::to_string(l) + " out of range");
    check_layered(lnet);
    require_identical_output(lnet.net);
    const Network& net = lnet.net;

    const auto& from = lnet.layer_nodes[static_cast<std::size_t>(l) - 1];
    const auto& to = lnet.layer_nodes[static_cast<std::size_t>(l)];
    Matrix m(net.field(), to.size(), from.size());
    std::map<std::string, std::size_t> col;
    for (std::size_t j = 0; j < from.size(); ++j) col[from[j]] = j;

    for (std::size_t i = 0; i < to.size(); ++i) {
        std::size_t node = *net.node_index(to[i]);
        for (std::size_t e : net.in_edges(node)) {
            auto jt = col.find(net.edge(e).from);
            if (jt == col.end())
                fail(ErrorCode::NotLayered, "edge '" + net.edge(e).id + "' does not come from layer " +
                                                std::to_string(l));
            m.set(i, jt->second, asg.resolve(net, node, e, SIZE_MAX));
        }
    }
    return m;
}

ChannelMatrix overall_matrix(const LayeredNetwork& lnet, const CodingAssignment& asg) {
    check_layered(lnet);
    require_identical_output(lnet.net);
    const Network& net = lnet.net;

    std::vector<std::string> cols;
    for (std::size_t e : net.source_out_edges()) cols.push_back(net.edge(e).id);

    Matrix acc = Matrix::identity(net.field(), lnet.layer_nodes[0].size());
    for (int l = 1; l < lnet.layers; ++l) acc = mat_mul(interlayer_matrix(lnet, asg, l), acc);
    return {std::move(acc), lnet.layer_nodes.back(), std::move(cols)};
}

ChannelMatrix individual_matrix(const LayeredNetwork& lnet, const CodingAssignment& asg, int k) {
    const Network& net = lnet.net;
    if (k < 1 || static_cast<std::size_t>(k) > net.destinations().size())
        fail(ErrorCode::UnknownDestination, "destination " + std::to_string(k));
    ChannelMatrix overall = overall_matrix(lnet, asg);

    std::map<std::string, std::size_t> row;
    for (std::size_t i = 0; i < overall.row_labels.size(); ++i) row[overall.row_labels[i]] = i;

    const auto& dest = net.destinations()[static_cast<std::size_t>(k) - 1];
    Matrix m(net.field(), dest.taps.size(), overall.mat.cols());
    std::vector<std::string> rows;
    for (std::size_t t = 0; t < dest.taps.size(); ++t) {
        std::size_t e = *net.edge_index(dest.taps[t]);
        auto it = row.find(net.edge(e).from);
        if (it == row.end())
            fail(ErrorCode::NotLayered, "tap '" + dest.taps[t] + "' does not read the last layer");
        for (std::size_t c = 0; c < overall.mat.cols(); ++c)
            m.set(t, c, overall.mat.at(it->second, c));
        rows.push_back(dest.taps[t]);
    }
    return {std::move(m), std::move(rows), overall.col_labels};
}

namespace {

/// Shared propagation core: computes the symbol on every edge.
std::vector<std::uint16_t> propagate(const Network& net, const CodingAssignment& asg,
                                     const std::vector<std::uint16_t>& x) {
    ensure_valid(net);
    asg.check(net);
    const Field& f = *net.field();
    if (x.size() != net.source_degree())
        fail(ErrorCode::DimensionMismatch, "source vector length " + std::to_string(x.size()) +
                                               ", source degree " +
                                               std::to_string(net.source_degree()));
    for (auto v : x)
        if (v >= f.order()) fail(ErrorCode::InvalidArgument, "source symbol out of field range");

    std::vector<std::uint16_t> value(net.edges().size(), 0);
    for (std::size_t u : net.topo_order()) {
        const Node& n = net.node(u);
        switch (n.kind) {
            case NodeKind::Source: {
                const auto& outs = net.out_edges(u);
                for (std::size_t j = 0; j < outs.size(); ++j) value[outs[j]] = x[j];
                break;
            }
            case NodeKind::Siso: {
                if (!net.out_edges(u).empty() && !net.in_edges(u).empty())
                    value[net.out_edges(u)[0]] = value[net.in_edges(u)[0]];
                break;
            }
            case NodeKind::Intermediate: {
                for (std::size_t e : net.out_edges(u)) {
                    std::uint16_t acc = 0;
                    for (std::size_t in : net.in_edges(u))
                        acc = f.add(acc, f.mul(asg.resolve(net, u, in, e), value[in]));
                    value[e] = acc;
                }
                break;
            }
            case NodeKind::Destination: break;
        }
    }
    return value;
}

SimulationResult collect(const Network& net, const std::vector<std::uint16_t>& value) {
    SimulationResult out;
    for (const auto& dest : net.destinations()) {
        std::vector<std::uint16_t> y;
        for (const auto& tap : dest.taps) y.push_back(value[*net.edge_index(tap)]);
        out.received.push_back(std::move(y));
    }
    return out;
}

} // namespace

SimulationResult simulate(const Network& net, const CodingAssignment& asg,
                          const std::vector<std::uint16_t>& x) {
    return collect(net, propagate(net, asg, x));
}

TimedResult simulate_timed(const Network& net, const CodingAssignment& asg,
                           const std::vector<std::uint16_t>& x) {
    TimedResult out;
    auto value = propagate(net, asg, x);
    out.values = collect(net, value);

    // One tick per edge; a node forwards only after its last input arrived.
    std::vector<int> edge_tick(net.edges().size(), 0);
    for (std::size_t u : net.topo_order()) {
        int ready = 0;
        std::set<int> arrivals;
        for (std::size_t e : net.in_edges(u)) {
            arrivals.insert(edge_tick[e]);
            ready = std::max(ready, edge_tick[e]);
        }
        for (std::size_t e : net.out_edges(u)) edge_tick[e] = ready + 1;
        if (!net.is_source(u)) {
            const std::string& id = net.node(u).id;
            out.arrival_ticks[id] = arrivals;
            out.buffer_depth[id] =
                arrivals.empty() ? 0 : *arrivals.rbegin() - *arrivals.begin();
        }
    }
    return out;
}

std::vector<ChannelMatrix> channel_via_simulation(const Network& net, const CodingAssignment& asg) {
    std::size_t n = net.source_degree();
    std::vector<ChannelMatrix> out;
    for (const auto& dest : net.destinations()) {
        Matrix m(net.field(), dest.taps.size(), n);
        out.push_back({std::move(m), dest.taps, {}});
        for (std::size_t e : net.source_out_edges())
            out.back().col_labels.push_back(net.edge(e).id);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::uint16_t> x(n, 0);
        x[j] = 1;
        SimulationResult sim = simulate(net, asg, x);
        for (std::size_t k = 0; k < out.size(); ++k)
            for (std::size_t r = 0; r < sim.received[k].size(); ++r)
                out[k].mat.set(r, j, sim.received[k][r]);
    }
    return out;
}

CodingAssignment transport_assignment(const Network& original, const CodingAssignment& asg,
                                      const ConversionResult& conv) {
    asg.check(original);
    const Network& out_net = conv.network;

    std::map<std::string, std::pair<std::string, std::size_t>> aux_origin; // aux -> (node, group)
    for (const auto& [orig, auxes] : conv.map.nodes) {
        if (auxes.size() == 1 && auxes[0] == orig) continue;
        for (std::size_t g = 0; g < auxes.size(); ++g) aux_origin[auxes[g]] = {orig, g};
    }
    std::map<std::string, std::string> edge_origin;
    for (const auto& [orig, news] : conv.map.edges)
        for (const auto& id : news) edge_origin[id] = orig;

    CodingAssignment out(original.field());
    for (std::size_t i = 0; i < out_net.nodes().size(); ++i) {
        const Node& n = out_net.node(i);
        if (n.kind != NodeKind::Intermediate) continue;

        std::string orig_node = n.id;
        std::size_t group = 0;
        if (auto it = aux_origin.find(n.id); it != aux_origin.end()) {
            orig_node = it->second.first;
            group = it->second.second;
        }
        auto orig_idx = original.node_index(orig_node);
        if (!orig_idx) continue; // inserted relay: source-fed, nothing to carry

        auto groups = out_groups(original, *orig_idx);
        bool unobservable = original.node(*orig_idx).variant != VariantKind::V1 && groups.empty();
        std::size_t rep_out = group < groups.size() ? groups[group].front() : SIZE_MAX;
        for (std::size_t e : out_net.in_edges(i)) {
            if (source_tail(out_net, e)) continue;
            const std::string& orig_edge = edge_origin.at(out_net.edge(e).id);
            // A distinct-output node without outputs had no coefficients to
            // keep; the relabeled slot never reaches any receiver.
            std::uint16_t value =
                unobservable ? 0
                             : asg.resolve(original, *orig_idx,
                                           *original.edge_index(orig_edge), rep_out);
            out.set(n.id, out_net.edge(e).id, value);
        }
    }
    out.check(out_net);
    return out;
}

CodingAssignment transport_assignment(const Network& original, const CodingAssignment& asg,
                                      const LayeredNetwork& lnet) {
    asg.check(original);
    const Network& out_net = lnet.net;

    CodingAssignment out(original.field());
    for (std::size_t i = 0; i < out_net.nodes().size(); ++i) {
        const Node& n = out_net.node(i);
        if (n.kind != NodeKind::Intermediate || out_net.out_degree(i) == 0) continue;
        std::size_t orig = *original.node_index(n.id);

        // In- and out-edges correspond positionally: chains replace an edge
        // in place and only the receiving hop keeps the original id.
        const auto& ins = out_net.in_edges(i);
        const auto& outs = out_net.out_edges(i);
        const auto& orig_outs = original.out_edges(orig);
        for (std::size_t ci = 0; ci < ins.size(); ++ci) {
            if (source_tail(out_net, ins[ci])) continue;
            std::size_t orig_in = *original.edge_index(out_net.edge(ins[ci]).id);
            if (n.variant == VariantKind::V1) {
                out.set(n.id, out_net.edge(ins[ci]).id,
                        asg.resolve(original, orig, orig_in, SIZE_MAX));
                continue;
            }
            for (std::size_t co = 0; co < outs.size(); ++co)
                out.set(n.id, out_net.edge(ins[ci]).id, out_net.edge(outs[co]).id,
                        asg.resolve(original, orig, orig_in, orig_outs[co]));
        }
    }
    out.check(out_net);
    return out;
}

bool is_valid(const LayeredNetwork& lnet, const CodingAssignment& asg, int k) {
    return mat_rank(individual_matrix(lnet, asg, k).mat) == lnet.net.source_degree();
}

bool is_valid(const Network& net, const CodingAssignment& asg, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > net.destinations().size())
        fail(ErrorCode::UnknownDestination, "destination " + std::to_string(k));
    auto channels = channel_via_simulation(net, asg);
    return mat_rank(channels[static_cast<std::size_t>(k) - 1].mat) == net.source_degree();
}

} // namespace lnc
