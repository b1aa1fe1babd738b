/** \file
 * Gate dependency DAG built from consecutive qubit-sharing, with transitive
 * reduction. Node i precedes node j when gate j shares a qubit with gate i,
 * i comes earlier, and no gate in between touches that qubit. Transitive
 * edges are removed after construction; longest-path queries and topological
 * levels are unaffected by the reduction.
 */
#pragma once

#include <functional>
#include <vector>

#include "dqc/circuit.hpp"

namespace dqc {

struct GateDag {
    int n_nodes = 0;
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;

    static GateDag build(const Circuit& c);

    std::size_t edge_count() const;

    /// ASAP level of every gate under unit latency (levels start at 1);
    /// empty vector for an empty DAG.
    std::vector<int> asap_levels() const;

    /// Number of unit-latency layers, i.e. the longest path in nodes.
    int layer_depth() const;

    /// Weighted makespan: latest finish time over all nodes when every gate
    /// starts as soon as its predecessors finish. `latency(i)` gives node
    /// i's duration.
    double weighted_makespan(const std::function<double(int)>& latency) const;
};

}  // namespace dqc
