#pragma once

#include "lnc/transform.hpp"

namespace lnc {

/// Knobs for the bundled random-DAG generator. Everything is driven by a
/// splitmix64 stream, so (params, seed) pins the instance exactly.
struct DagParams {
    FieldRef field;
    std::size_t min_nodes = 4;  // intermediate nodes
    std::size_t max_nodes = 12;
    double edge_prob = 0.35;
    std::size_t destinations = 1;
    VariantKind variant = VariantKind::V1; // applied to every intermediate
    bool mixed_variants = false;           // overrides `variant` with a random mix
};

/// Random acyclic single-source network. Every intermediate is reachable
/// from the source and feeds some destination, so the instance survives
/// layering.
Network random_dag(const DagParams& params, std::uint64_t seed);

struct LayeredParams {
    FieldRef field;
    std::size_t min_layers = 2;
    std::size_t max_layers = 8;
    std::size_t min_width = 1;
    std::size_t max_width = 10;
    double extra_edge_prob = 0.4;
    std::size_t destinations = 1;
    /// Give every destination exactly n taps and guarantee a structurally
    /// invertible channel (a full identity backbone through all layers).
    bool square = false;
    /// Destination 1 taps every last-layer node in position order, so its
    /// channel matrix equals the overall matrix.
    bool tap_all = false;
};

/// Random already-layered identical-output network; layer() inserts nothing.
LayeredNetwork random_layered(const LayeredParams& params, std::uint64_t seed);

} // namespace lnc
