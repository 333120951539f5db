#pragma once

#include <map>
#include <string>
#include <vector>

#include "lnc/network.hpp"

namespace lnc {

/// Records how a variant conversion rewrote the graph. Unchanged nodes map
/// to themselves; a split node maps to its auxiliary nodes in output-group
/// order. Each original edge maps to the new edges that realize it.
struct ConversionMap {
    std::map<std::string, std::vector<std::string>> nodes;
    std::map<std::string, std::vector<std::string>> edges;
    std::vector<std::string> relays; // broadcast relays inserted on source edges
};

struct ConversionResult {
    Network network;
    ConversionMap map;
};

/// Splits every multi-output node that emits distinct symbols into
/// single-output auxiliary nodes sharing the original inputs, so that the
/// result uses only identical-output nodes. Nodes that already emit one
/// distinct symbol (h = 1 or out-degree <= 1) are relabeled in place.
/// A source edge feeding a split node gains a relay node so the source
/// out-degree, and with it the symbol indexing, is preserved.
ConversionResult to_variant1(const Network& net);

/// Out-edge groups that carry the same symbol: one group per out-edge for
/// distinct-output nodes, h contiguous balanced blocks for hybrid(h), one
/// group for identical-output nodes. Edge indices in edge-list order.
std::vector<std::vector<std::size_t>> out_groups(const Network& net, std::size_t node);

/// A network whose non-destination nodes sit in layers 1..L with edges only
/// between adjacent layers, destination taps reading layer L, and exactly
/// one source edge feeding each layer-1 node.
struct LayeredNetwork {
    Network net;
    int layers = 0;                                      // L
    std::map<std::string, int> layer_of;                 // intermediate + siso nodes
    std::vector<std::vector<std::string>> layer_nodes;   // [l-1] = ids in layer l
    std::vector<std::string> inserted;                   // relay ids, insertion order
    std::map<std::string, std::string> inserted_on;      // relay id -> subdivided edge id
    // Original edge id -> its segment ids in path order (last = original id).
    // Derivation detail for coefficient transport; not serialized.
    std::map<std::string, std::vector<std::string>> chains;

    std::size_t layer_size(int l) const { return layer_nodes[static_cast<std::size_t>(l) - 1].size(); }
};

/// Assigns each node the layer equal to its longest edge distance from the
/// source, then subdivides every edge spanning s > 1 layer boundaries with
/// s-1 single-input/single-output delay nodes and pads destination taps out
/// to layer L. All source->destination paths end up with exactly L+1 edges.
/// Relay coefficients are fixed to the multiplicative identity, so the
/// rewrite leaves every end-to-end map unchanged.
///
/// Requires a valid network in which every node is reachable from the
/// source; throws Unreachable otherwise.
LayeredNetwork layer(const Network& net);

/// Wellformedness of a claimed layering; throws NotLayered with a reason.
void check_layered(const LayeredNetwork& lnet);

/// Canonical within-layer ordering: layer 1 follows the source out-edge
/// order, deeper layers follow node-list order.
std::vector<std::vector<std::string>> derive_layer_nodes(const Network& net,
                                                         const std::map<std::string, int>& layer_of,
                                                         int layers);

struct LayeringCost {
    std::size_t coding_points = 0;
    double avg_in_degree = 0.0; // 0 when there are no coding points
};

/// The quantities governing the layering pass: how many nodes merge paths
/// and how many inputs they merge on average.
LayeringCost layering_cost(const Network& net);

} // namespace lnc
