#pragma once

#include <string>
#include <vector>

#include "lnc/coding.hpp"
#include "lnc/json_io.hpp"

namespace lnc::testing {

inline FieldRef gf(std::uint32_t p, std::uint32_t m = 1) { return Field::make(p, m); }

inline Network load_data_network(const std::string& name) {
    return network_from_json(parse_json(read_file(std::string(LNC_DATA_DIR) + "/" + name)));
}

/// S -> v1 -> ... -> v(len-1) -> D with unit-width everything.
inline Network chain_network(FieldRef field, std::size_t inner) {
    std::vector<Node> nodes{{"S", NodeKind::Source, VariantKind::V1, 0}};
    std::vector<Edge> edges;
    std::string prev = "S";
    for (std::size_t i = 1; i <= inner; ++i) {
        std::string id = "v" + std::to_string(i);
        nodes.push_back({id, NodeKind::Intermediate, VariantKind::V1, 0});
        edges.push_back({"e" + std::to_string(i), prev, id});
        prev = id;
    }
    nodes.push_back({"D", NodeKind::Destination, VariantKind::V1, 0});
    edges.push_back({"e" + std::to_string(inner + 1), prev, "D"});
    return Network(std::move(field), std::move(nodes), std::move(edges), "S", {"D"});
}

/// The two-layer worked example: three upstream nodes 1,2,3 fan into four
/// downstream nodes A,B,C,D through eight edges; one destination taps all
/// four. Coefficients at the receivers are 8 distinct nonzero values.
struct TwoLayerExample {
    Network net;
    CodingAssignment asg;
    // Receiver coefficients in pattern order: cA1 cA2 cB1 cB2 cB3 cC2 cC3 cD3.
    std::vector<std::uint16_t> c;
};

inline TwoLayerExample two_layer_example(FieldRef field,
                                         std::vector<std::uint16_t> c = {2, 3, 4, 5, 6, 7, 8, 9}) {
    std::vector<Node> nodes{{"S", NodeKind::Source, VariantKind::V1, 0}};
    for (const char* id : {"1", "2", "3"})
        nodes.push_back({id, NodeKind::Intermediate, VariantKind::V1, 0});
    for (const char* id : {"A", "B", "C", "D"})
        nodes.push_back({id, NodeKind::Intermediate, VariantKind::V1, 0});
    nodes.push_back({"D1", NodeKind::Destination, VariantKind::V1, 0});

    std::vector<Edge> edges{
        {"s1", "S", "1"},  {"s2", "S", "2"},  {"s3", "S", "3"},
        {"e1A", "1", "A"}, {"e2A", "2", "A"},
        {"e1B", "1", "B"}, {"e2B", "2", "B"}, {"e3B", "3", "B"},
        {"e2C", "2", "C"}, {"e3C", "3", "C"},
        {"e3D", "3", "D"},
        {"tA", "A", "D1"}, {"tB", "B", "D1"}, {"tC", "C", "D1"}, {"tD", "D", "D1"},
    };
    Network net(field, std::move(nodes), std::move(edges), "S", {"D1"});

    CodingAssignment asg(field);
    asg.set("A", "e1A", c[0]);
    asg.set("A", "e2A", c[1]);
    asg.set("B", "e1B", c[2]);
    asg.set("B", "e2B", c[3]);
    asg.set("B", "e3B", c[4]);
    asg.set("C", "e2C", c[5]);
    asg.set("C", "e3C", c[6]);
    asg.set("D", "e3D", c[7]);
    return {std::move(net), std::move(asg), std::move(c)};
}

/// The printed 4x3 transfer pattern of the two-layer example.
inline Matrix two_layer_forward_matrix(FieldRef field, const std::vector<std::uint16_t>& c) {
    Matrix m(std::move(field), 4, 3);
    m.set(0, 0, c[0]); m.set(0, 1, c[1]);
    m.set(1, 0, c[2]); m.set(1, 1, c[3]); m.set(1, 2, c[4]);
    m.set(2, 1, c[5]); m.set(2, 2, c[6]);
    m.set(3, 2, c[7]);
    return m;
}

} // namespace lnc::testing
