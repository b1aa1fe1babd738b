/** \file
 * Qubit-to-node assignment minimizing cut-crossing two-qubit gates.
 *
 * The bipartitioner runs multi-start Fiduccia-Mattheyses refinement on the
 * weighted interaction graph followed by a pairwise-swap descent, so the
 * returned cut is locally optimal under single feasible moves and swaps.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dqc/circuit.hpp"

namespace dqc {

struct InteractionGraph {
    int n_vertices = 0;
    // Symmetric weights keyed by (min qubit, max qubit); weight = number of
    // 2Q gates on the pair.
    std::map<std::pair<int, int>, long> edges;

    long cut_weight(const std::vector<int>& node_of) const;
};

struct Assignment {
    std::vector<int> node_of;       // qubit -> node id
    std::vector<int> capacities;    // per-node max data qubits

    int n_nodes() const { return static_cast<int>(capacities.size()); }
    void validate() const;
};

struct DistributedCircuit {
    Circuit circuit;
    Assignment assignment;
    std::vector<bool> remote;  // per gate; true when a 2Q gate crosses nodes
    long remote_count = 0;
    long local_2q_count = 0;

    bool is_remote(std::size_t gate_index) const { return remote[gate_index]; }
};

InteractionGraph interaction_graph(const Circuit& c);

/// Balanced bipartition under capacities [c0, c1]; 16 random FM starts, best
/// cut kept (ties by start index), gain ties broken by lower qubit index.
Assignment bipartition(const InteractionGraph& g, const std::vector<int>& capacities,
                       std::uint64_t seed, int n_starts = 16);

DistributedCircuit annotate_remote(const Circuit& c, const Assignment& a);

/// Text format: one `qubit node` pair per line; '#' comments allowed.
Assignment load_assignment(const std::string& path, int n_qubits,
                           const std::vector<int>& capacities);
void save_assignment(const Assignment& a, const std::string& path);

}  // namespace dqc
