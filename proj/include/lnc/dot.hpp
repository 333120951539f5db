#pragma once

#include <string>

#include "lnc/transform.hpp"

namespace lnc {

/// Graphviz rendering. Source and destinations are boxes, inserted relays
/// gray dots; deterministic output, nodes and edges in declaration order.
std::string to_dot(const Network& net);

/// Same, with nodes of each layer pinned to one rank.
std::string to_dot(const LayeredNetwork& lnet);

} // namespace lnc
