#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lnc/matrix.hpp"
#include "lnc/transform.hpp"

namespace lnc {

/// Coefficient storage key. out_edge is empty for identical-output nodes
/// and names the outgoing edge for distinct-output (and hybrid) nodes.
struct CoeffKey {
    std::string node;
    std::string in_edge;
    std::string out_edge;

    auto operator<=>(const CoeffKey&) const = default;
};

/// The linear coding coefficients of one network. Rules baked into the
/// resolution order:
///  - relay (siso) nodes pass their input through with coefficient 1;
///  - an in-edge arriving straight from the source carries the raw source
///    symbol and defaults to coefficient 1 (an explicit entry overrides);
///  - every other (node, in-edge[, out-edge]) slot must be present.
class CodingAssignment {
  public:
    explicit CodingAssignment(FieldRef field) : field_(std::move(field)) {}

    const FieldRef& field() const { return field_; }
    const std::map<CoeffKey, std::uint16_t>& coefficients() const { return coeffs_; }

    void set(const std::string& node, const std::string& in_edge, std::uint16_t value) {
        set(node, in_edge, "", value);
    }
    void set(const std::string& node, const std::string& in_edge, const std::string& out_edge,
             std::uint16_t value);

    /// Resolved coefficient applied at `node` to the symbol arriving on
    /// `in_edge` when producing the symbol for `out_edge`.
    std::uint16_t resolve(const Network& net, std::size_t node, std::size_t in_edge,
                          std::size_t out_edge) const;

    /// Verifies the assignment is complete and consistent for `net`:
    /// every required slot filled, no entries for foreign nodes/edges, and
    /// hybrid groups carrying equal values. Throws InvalidAssignment or
    /// MissingCoefficient.
    void check(const Network& net) const;

  private:
    FieldRef field_;
    std::map<CoeffKey, std::uint16_t> coeffs_;
};

/// Independent uniform draw for every required coefficient slot, walked in
/// node-list/edge-list order from a splitmix64 stream; a fixed seed yields
/// an identical assignment on every platform. Hybrid groups draw once per
/// (in-edge, group) and replicate across the group's out-edges.
CodingAssignment assign_random(const Network& net, std::uint64_t seed);

/// The out-degree x in-degree coefficient matrix of one node. Rows follow
/// out-edge order, columns in-edge order; identical-output nodes have all
/// rows equal; relays give the 1x1 identity.
Matrix node_matrix(const Network& net, const CodingAssignment& asg, const std::string& node);

/// A matrix together with the meaning of its row and column indices.
struct ChannelMatrix {
    Matrix mat;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
};

/// The n_{l+1} x n_l transfer matrix between adjacent layers, 1 <= l < L:
/// entry (i,j) is the coefficient applied by the i-th layer-(l+1) node to
/// the edge from the j-th layer-l node, zero where no edge exists.
/// Requires an identical-output (converted) network.
Matrix interlayer_matrix(const LayeredNetwork& lnet, const CodingAssignment& asg, int l);

/// Product of all L-1 interlayer matrices, right factor first; maps the n
/// layer-1 symbols to the n_L layer-L symbols. Identity when L = 1.
ChannelMatrix overall_matrix(const LayeredNetwork& lnet, const CodingAssignment& asg);

/// Rows of the overall matrix read by destination k's taps, in tap order.
/// k is 1-based.
ChannelMatrix individual_matrix(const LayeredNetwork& lnet, const CodingAssignment& asg, int k);

struct SimulationResult {
    std::vector<std::vector<std::uint16_t>> received; // per destination, tap order
};

/// Propagates the source vector x through any valid network, applying the
/// linear combination rule at every node. Works for all variants, layered
/// or not.
SimulationResult simulate(const Network& net, const CodingAssignment& asg,
                          const std::vector<std::uint16_t>& x);

struct TimedResult {
    SimulationResult values;
    std::map<std::string, std::set<int>> arrival_ticks; // per non-source node
    std::map<std::string, int> buffer_depth;            // max tick - min tick
};

/// Same propagation on a discrete clock: one tick per edge, each node
/// forwarding once its latest input arrived. In a layered network every
/// arrival set is a singleton; elsewhere the spread gives the buffer depth
/// a node needs to synchronize its inputs.
TimedResult simulate_timed(const Network& net, const CodingAssignment& asg,
                           const std::vector<std::uint16_t>& x);

/// End-to-end matrices assembled by simulating unit vectors; the
/// simulation-side route to the same object the interlayer product yields.
std::vector<ChannelMatrix> channel_via_simulation(const Network& net, const CodingAssignment& asg);

/// Carries an assignment across to_variant1: every coefficient slot of the
/// converted network receives the value the matching slot held in the
/// original, so both networks realize the same end-to-end maps.
CodingAssignment transport_assignment(const Network& original, const CodingAssignment& asg,
                                      const ConversionResult& conv);

/// Carries an assignment across layer(). Receiver-side keys survive by id;
/// slots that used to read the source directly turn into explicit unit
/// coefficients on the delayed symbol, and out-edge keys follow the first
/// chain segment.
CodingAssignment transport_assignment(const Network& original, const CodingAssignment& asg,
                                      const LayeredNetwork& lnet);

/// A code is valid for destination k iff its channel matrix has full column
/// rank n, i.e. the destination can reconstruct every source symbol.
bool is_valid(const LayeredNetwork& lnet, const CodingAssignment& asg, int k);
bool is_valid(const Network& net, const CodingAssignment& asg, int k);

} // namespace lnc
