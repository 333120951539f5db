#include "lnc/dot.hpp"

#include <sstream>

namespace lnc {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

void emit_node(std::ostream& out, const Node& n, const std::string& indent) {
    out << indent << quote(n.id);
    switch (n.kind) {
        case NodeKind::Source: out << " [shape=box, style=bold]"; break;
        case NodeKind::Destination: out << " [shape=box]"; break;
        case NodeKind::Siso: out << " [shape=circle, style=filled, fillcolor=gray80]"; break;
        case NodeKind::Intermediate:
            out << " [shape=circle";
            if (n.variant == VariantKind::V2) out << ", peripheries=2";
            else if (n.variant == VariantKind::Hybrid)
                out << ", peripheries=2, label=" << quote(n.id + " (h=" + std::to_string(n.hybrid_h) + ")");
            out << "]";
            break;
    }
    out << ";\n";
}

void emit_edges(std::ostream& out, const Network& net) {
    for (const auto& e : net.edges())
        out << "  " << quote(e.from) << " -> " << quote(e.to) << " [label=" << quote(e.id)
            << "];\n";
}

} // namespace

std::string to_dot(const Network& net) {
    std::ostringstream out;
    out << "digraph network {\n  rankdir=LR;\n";
    for (const auto& n : net.nodes()) emit_node(out, n, "  ");
    emit_edges(out, net);
    out << "}\n";
    return out.str();
}

std::string to_dot(const LayeredNetwork& lnet) {
    const Network& net = lnet.net;
    std::ostringstream out;
    out << "digraph network {\n  rankdir=LR;\n";
    for (const auto& n : net.nodes()) {
        auto it = lnet.layer_of.find(n.id);
        if (it == lnet.layer_of.end()) emit_node(out, n, "  ");
    }
    for (int l = 1; l <= lnet.layers; ++l) {
        out << "  subgraph cluster_layer" << l << " {\n    rank=same;\n    label=" <<
            quote("l=" + std::to_string(l)) << ";\n";
        for (const auto& id : lnet.layer_nodes[static_cast<std::size_t>(l) - 1])
            emit_node(out, net.node(*net.node_index(id)), "    ");
        out << "  }\n";
    }
    emit_edges(out, net);
    out << "}\n";
    return out.str();
}

} // namespace lnc
