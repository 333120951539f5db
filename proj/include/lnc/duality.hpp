#pragma once

#include "lnc/coding.hpp"

namespace lnc {

/// A layered network with the communication direction reversed for one
/// destination. Edges keep their ids and their linear factors; roles swap:
/// the chosen destination injects, the original source reads, and every
/// inner node turns from weigh-inputs-then-broadcast into
/// sum-inputs-then-weigh-outputs. Other destinations drop out.
///
/// `asg` expresses the reversed node behavior in ordinary per-out-edge
/// coefficients, so the reversed network simulates with the same engine as
/// any other network.
struct ReversedNetwork {
    Network net;
    CodingAssignment asg;
    std::map<std::string, std::uint16_t> edge_factor; // id -> retained linear factor
    int k = 0;                                        // 1-based forward destination index
    int layers = 0;                                   // forward L
    std::vector<std::vector<std::string>> fwd_layer_nodes;
    std::map<std::string, int> rev_layer_of;          // layer l -> L+1-l relabeling
    std::vector<std::string> injection_edges;         // forward taps of destination k
    std::vector<std::string> read_edges;              // forward source edges
};

/// Builds the reversed network for destination k. Requires a layered
/// identical-output network with a complete assignment.
ReversedNetwork reverse(const LayeredNetwork& lnet, const CodingAssignment& asg, int k);

/// Product of the reversed interlayer matrices, built from the reversed
/// graph and the retained edge factors; maps the n_L last-layer symbols to
/// the n first-layer symbols. Contract: equals the transpose of the forward
/// overall matrix.
ChannelMatrix backward_matrix(const ReversedNetwork& rev);

/// Columns of backward_matrix actually driven by the reverse source's
/// injection edges, in forward tap order: the n x N_k end-to-end map the
/// reverse destination sees.
ChannelMatrix backward_end_to_end(const ReversedNetwork& rev);

struct SquareReduction {
    std::vector<std::size_t> kept_rows; // positions into the tap list
    std::vector<std::string> kept_taps; // tap edge ids, original order
    LayeredNetwork reduced;             // network with the other taps deleted
};

/// Forces destination k's channel matrix square by keeping the greedily
/// first n linearly independent rows (tap order scan) and deleting the
/// remaining tap edges. Requires rank n.
SquareReduction square_reduce(const LayeredNetwork& lnet, const CodingAssignment& asg, int k);

/// Backward end-to-end map when the reverse source transmits P*x instead of
/// raw symbols: P must be N_k x n and the composed map full column rank.
ChannelMatrix precode(const ReversedNetwork& rev, const Matrix& p);

struct PrecodeResult {
    Matrix p;
    ChannelMatrix map;
};

/// Draws random precoding matrices until the composed map is invertible;
/// gives up after max_tries.
PrecodeResult precode_random(const ReversedNetwork& rev, std::uint64_t seed,
                             std::size_t max_tries = 32);

/// True iff the reversed code delivers full rank n to the reverse
/// destination. For square channel matrices this coincides with forward
/// validity.
bool backward_valid(const LayeredNetwork& lnet, const CodingAssignment& asg, int k);

} // namespace lnc
