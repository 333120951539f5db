#pragma once

#include <vector>

#include "lnc/coding.hpp"

namespace lnc {

/// Zero/nonzero occupancy pattern of a matrix.
struct Pattern {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> mask; // row-major, 1 = free entry

    bool at(std::size_t r, std::size_t c) const { return mask[r * cols + c] != 0; }
    static Pattern from_matrix(const Matrix& m);
};

/// Maximum rank attainable by filling the pattern's free positions with
/// field values, over any sufficiently large field. Equals the maximum
/// bipartite matching between rows and columns restricted to the mask;
/// computed with augmenting paths.
std::size_t structural_rank(const Pattern& pattern);

/// Adjacency pattern of the transfer between layers l and l+1.
Pattern interlayer_pattern(const LayeredNetwork& lnet, int l);

/// Largest observed rank of destination k's channel matrix over `trials`
/// independent random assignments (per-trial seeds derived from `seed` via
/// a splitmix64 stream). Lower-bounds the true mincut and meets it with
/// overwhelming probability once the field is large. Requires field order
/// q > number of destinations.
std::size_t rank_mincut_estimate(const LayeredNetwork& lnet, int k, std::size_t trials,
                                 std::uint64_t seed);

/// min over l of the structural rank of the layer-l pattern, the last
/// pattern restricted to the rows feeding destination k's taps.
std::size_t mincut_upper_bound(const LayeredNetwork& lnet, int k);

/// Maximum number of edge-disjoint source->destination-k paths with unit
/// edge capacities (augmenting-path max-flow). The independent oracle the
/// rank estimate is checked against; runs on the original network.
std::size_t maxflow_mincut(const Network& net, int k);

struct MincutReport {
    std::string destination;
    std::uint32_t field_order = 0;
    std::size_t trials = 0;
    std::size_t max_rank = 0;                  // rank estimate
    std::vector<std::size_t> per_layer_ranks;  // structural, layers 1..L-1
    std::size_t upper_bound = 0;
    std::size_t maxflow = 0;
};

/// Full pipeline for one destination: layer the network, convert it if any
/// node emits distinct outputs, then estimate/bound the mincut and compare
/// with the max-flow of the original graph.
MincutReport mincut_report(const Network& net, int k, std::size_t trials, std::uint64_t seed);

} // namespace lnc
