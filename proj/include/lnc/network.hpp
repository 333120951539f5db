#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lnc/field.hpp"

namespace lnc {

enum class NodeKind { Source, Intermediate, Siso, Destination };
enum class VariantKind { V1, V2, Hybrid };

const char* node_kind_name(NodeKind k);

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Intermediate;
    VariantKind variant = VariantKind::V1;
    int hybrid_h = 0; // meaningful only for VariantKind::Hybrid
};

struct Edge {
    std::string id;
    std::string from;
    std::string to;
};

/// A destination together with its ordered taps: the ids of its incoming
/// edges in edge-list order. Tap order fixes the receive-symbol indexing.
struct DestinationSpec {
    std::string node;
    std::vector<std::string> taps;
};

struct Issue {
    ErrorCode code;
    std::string message;
};

struct ValidationReport {
    std::vector<Issue> issues;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

/// Directed acyclic single-source multicast network. Nodes, edges and the
/// destination list keep their declaration order; all derived indexing
/// (source symbols, taps, layer positions) is stable under serialization.
///
/// Construction never throws on semantic problems; validate() reports them.
class Network {
  public:
    Network(FieldRef field, std::vector<Node> nodes, std::vector<Edge> edges, std::string source,
            std::vector<std::string> destinations);

    const FieldRef& field() const { return field_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& source_id() const { return source_; }
    const std::vector<DestinationSpec>& destinations() const { return destinations_; }

    std::optional<std::size_t> node_index(const std::string& id) const;
    std::optional<std::size_t> edge_index(const std::string& id) const;
    const Node& node(std::size_t i) const { return nodes_[i]; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }

    /// Edge indices in edge-list order.
    const std::vector<std::size_t>& in_edges(std::size_t node) const { return in_[node]; }
    const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_[node]; }
    std::size_t in_degree(std::size_t node) const { return in_[node].size(); }
    std::size_t out_degree(std::size_t node) const { return out_[node].size(); }

    std::size_t tail_index(std::size_t edge) const { return tail_[edge]; }
    std::size_t head_index(std::size_t edge) const { return head_[edge]; }

    /// The source's out-edges; position j carries source symbol j.
    const std::vector<std::size_t>& source_out_edges() const;
    std::size_t source_degree() const { return source_out_edges().size(); }

    bool is_source(std::size_t node) const { return nodes_[node].kind == NodeKind::Source; }
    bool is_destination(std::size_t node) const {
        return nodes_[node].kind == NodeKind::Destination;
    }

    /// Node indices in a deterministic topological order (Kahn, ties by node
    /// list position). Throws CycleDetected.
    std::vector<std::size_t> topo_order() const;

  private:
    friend ValidationReport validate(const Network&);

    FieldRef field_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::string source_;
    std::vector<DestinationSpec> destinations_;

    std::map<std::string, std::size_t> node_idx_;
    std::map<std::string, std::size_t> edge_idx_;
    std::vector<std::vector<std::size_t>> in_, out_;
    std::vector<std::size_t> tail_, head_;
    bool duplicate_node_ids_ = false;
    bool duplicate_edge_ids_ = false;
    bool dangling_edges_ = false;
};

/// Report-style check of every structural invariant: unique ids, resolvable
/// endpoints, no parallel edges, acyclicity, single source with in-degree 0,
/// destinations with out-degree 0 and at least one tap, SISO degrees,
/// hybrid h within 1..out-degree.
ValidationReport validate(const Network& net);

/// Throws InvalidNetwork with the first few issues if validation fails.
void ensure_valid(const Network& net);

/// Node ids ordered so every edge goes from an earlier to a later position.
/// Ties are broken by ascending node id. Throws CycleDetected.
std::vector<std::string> ancestral_order(const Network& net);

/// Non-destination nodes with in-degree >= 2, in node-list order.
std::vector<std::string> coding_points(const Network& net);

/// Set of distinct source->target path lengths (edge counts), computed by
/// merging length sets along a topological sweep. Empty when unreachable.
std::set<std::size_t> path_length_spectrum(const Network& net, const std::string& target);

} // namespace lnc
