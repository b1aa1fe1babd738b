#include "dqc/partition.hpp"

#include "dqc/rng.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace dqc {

long InteractionGraph::cut_weight(const std::vector<int>& node_of) const {
    long cut = 0;
    for (const auto& [pair, w] : edges)
        if (node_of[pair.first] != node_of[pair.second]) cut += w;
    return cut;
}

void Assignment::validate() const {
    std::vector<int> used(capacities.size(), 0);
    for (std::size_t q = 0; q < node_of.size(); ++q) {
        const int node = node_of[q];
        if (node < 0 || node >= n_nodes())
            throw std::invalid_argument("assignment: node id " + std::to_string(node) +
                                        " out of range for qubit " + std::to_string(q));
        ++used[node];
    }
    for (int n = 0; n < n_nodes(); ++n) {
        if (used[n] > capacities[n])
            throw std::invalid_argument("assignment: node " + std::to_string(n) + " holds " +
                                        std::to_string(used[n]) + " qubits, capacity " +
                                        std::to_string(capacities[n]));
    }
}

InteractionGraph interaction_graph(const Circuit& c) {
    InteractionGraph g;
    g.n_vertices = c.n_qubits;
    for (const Gate& gate : c.gates) {
        if (gate.arity() != 2) continue;
        const int u = std::min(gate.q0(), gate.q1());
        const int v = std::max(gate.q0(), gate.q1());
        ++g.edges[{u, v}];
    }
    return g;
}

namespace {

struct AdjGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, long>>> adj;

    explicit AdjGraph(const InteractionGraph& g) : n(g.n_vertices), adj(g.n_vertices) {
        for (const auto& [pair, w] : g.edges) {
            adj[pair.first].emplace_back(pair.second, w);
            adj[pair.second].emplace_back(pair.first, w);
        }
    }

    long cut(const std::vector<int>& side) const {
        long c = 0;
        for (int u = 0; u < n; ++u)
            for (const auto& [v, w] : adj[u])
                if (u < v && side[u] != side[v]) c += w;
        return c;
    }

    // gain of moving u to the other side: external - internal weight
    long gain(const std::vector<int>& side, int u) const {
        long g = 0;
        for (const auto& [v, w] : adj[u]) g += (side[v] != side[u]) ? w : -w;
        return g;
    }
};

// One FM pass: move vertices one at a time (highest gain first, each vertex
// at most once), then roll back to the best capacity-feasible prefix. The
// pass itself may overfill a side by one vertex so that pairs can migrate
// even when the capacities are exactly tight; only feasible prefixes are
// kept. Returns true when the pass improved the cut.
bool fm_pass(const AdjGraph& g, std::vector<int>& side, const std::vector<int>& capacities) {
    const int n = g.n;
    std::vector<int> count(2, 0);
    for (int u = 0; u < n; ++u) ++count[side[u]];

    std::vector<bool> locked(n, false);
    std::vector<long> gain(n);
    for (int u = 0; u < n; ++u) gain[u] = g.gain(side, u);

    std::vector<int> moves;
    long cumulative = 0;
    long best_prefix_gain = 0;
    int best_prefix = 0;

    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int u = 0; u < n; ++u) {
            if (locked[u]) continue;
            const int to = 1 - side[u];
            if (count[to] + 1 > capacities[to] + 1) continue;  // one-over slack
            if (best == -1 || gain[u] > gain[best]) best = u;  // ties: lower index
        }
        if (best == -1) break;

        --count[side[best]];
        side[best] = 1 - side[best];
        ++count[side[best]];
        locked[best] = true;
        cumulative += gain[best];
        moves.push_back(best);
        for (const auto& [v, w] : g.adj[best])
            if (!locked[v]) gain[v] += (side[v] == side[best]) ? -2 * w : 2 * w;

        const bool feasible = count[0] <= capacities[0] && count[1] <= capacities[1];
        if (feasible && cumulative > best_prefix_gain) {
            best_prefix_gain = cumulative;
            best_prefix = static_cast<int>(moves.size());
        }
    }

    // Undo everything past the best feasible prefix.
    for (int i = static_cast<int>(moves.size()) - 1; i >= best_prefix; --i)
        side[moves[i]] = 1 - side[moves[i]];
    return best_prefix_gain > 0;
}

// Hill descent over feasible single moves and pair swaps until no single
// neighbor improves the cut.
void swap_descent(const AdjGraph& g, std::vector<int>& side, const std::vector<int>& capacities) {
    const int n = g.n;
    std::vector<int> count(2, 0);
    for (int u = 0; u < n; ++u) ++count[side[u]];

    bool improved = true;
    while (improved) {
        improved = false;
        long best_delta = 0;
        int best_u = -1, best_v = -1;
        for (int u = 0; u < n; ++u) {
            const int to = 1 - side[u];
            if (count[to] + 1 <= capacities[to]) {
                const long d = g.gain(side, u);
                if (d > best_delta) {
                    best_delta = d;
                    best_u = u;
                    best_v = -1;
                }
            }
            for (int v = u + 1; v < n; ++v) {
                if (side[v] == side[u]) continue;
                long d = g.gain(side, u) + g.gain(side, v);
                for (const auto& [w_v, w] : g.adj[u])
                    if (w_v == v) d -= 2 * w;  // the u-v edge itself stays cut
                if (d > best_delta) {
                    best_delta = d;
                    best_u = u;
                    best_v = v;
                }
            }
        }
        if (best_u >= 0) {
            --count[side[best_u]];
            side[best_u] = 1 - side[best_u];
            ++count[side[best_u]];
            if (best_v >= 0) {
                --count[side[best_v]];
                side[best_v] = 1 - side[best_v];
                ++count[side[best_v]];
            }
            improved = true;
        }
    }
}

}  // namespace

Assignment bipartition(const InteractionGraph& g, const std::vector<int>& capacities,
                       std::uint64_t seed, int n_starts) {
    if (capacities.size() != 2) throw std::invalid_argument("bipartition: expected 2 capacities");
    const int n = g.n_vertices;
    if (capacities[0] + capacities[1] < n)
        throw std::invalid_argument("bipartition: capacities too small for " + std::to_string(n) +
                                    " qubits");

    const AdjGraph adj(g);
    std::vector<int> best_side;
    long best_cut = std::numeric_limits<long>::max();

    for (int start = 0; start < n_starts; ++start) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (start + 1));
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        shuffle_deterministic(order, rng);

        // Balanced random start: side 0 gets as close to half as the
        // capacities allow.
        const int n0 = std::clamp(n / 2, n - capacities[1], capacities[0]);
        std::vector<int> side(n, 1);
        for (int i = 0; i < n0; ++i) side[order[i]] = 0;

        while (fm_pass(adj, side, capacities)) {
        }
        swap_descent(adj, side, capacities);

        const long cut = adj.cut(side);
        if (cut < best_cut) {
            best_cut = cut;
            best_side = side;
        }
    }

    Assignment a;
    a.node_of = std::move(best_side);
    a.capacities = capacities;
    a.validate();
    return a;
}

DistributedCircuit annotate_remote(const Circuit& c, const Assignment& a) {
    if (static_cast<int>(a.node_of.size()) < c.n_qubits)
        throw std::invalid_argument("annotate_remote: assignment does not cover all qubits");
    DistributedCircuit dc;
    dc.circuit = c;
    dc.assignment = a;
    dc.remote.assign(c.gates.size(), false);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        if (g.arity() != 2) continue;
        if (a.node_of[g.q0()] != a.node_of[g.q1()]) {
            dc.remote[i] = true;
            ++dc.remote_count;
        } else {
            ++dc.local_2q_count;
        }
    }
    return dc;
}

Assignment load_assignment(const std::string& path, int n_qubits,
                           const std::vector<int>& capacities) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    Assignment a;
    a.capacities = capacities;
    a.node_of.assign(n_qubits, -1);

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        int qubit, node;
        if (!(ls >> qubit)) continue;  // blank line
        if (!(ls >> node)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed line, expected `qubit node`");
        }
        std::string extra;
        if (ls >> extra) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": trailing tokens after `qubit node`");
        }
        if (qubit < 0 || qubit >= n_qubits)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": qubit " +
                                     std::to_string(qubit) + " out of range");
        if (a.node_of[qubit] != -1)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": duplicate qubit " +
                                     std::to_string(qubit));
        if (node < 0 || node >= static_cast<int>(capacities.size()))
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": node id " +
                                     std::to_string(node) + " out of range");
        a.node_of[qubit] = node;
    }
    for (int q = 0; q < n_qubits; ++q)
        if (a.node_of[q] == -1)
            throw std::runtime_error(path + ": qubit " + std::to_string(q) + " not assigned");
    a.validate();
    return a;
}

void save_assignment(const Assignment& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (std::size_t q = 0; q < a.node_of.size(); ++q)
        out << q << " " << a.node_of[q] << "\n";
}

}  // namespace dqc
