#include "dqc/dag.hpp"

#include <algorithm>
#include <cstdint>

namespace dqc {
namespace {

// Reachability bitset over gate indices, one word row per 64 nodes.
class ReachSet {
  public:
    ReachSet(int n_nodes, int words) : words_(words), bits_(std::size_t(n_nodes) * words, 0) {}
    void set(int row, int bit) { bits_[std::size_t(row) * words_ + bit / 64] |= (std::uint64_t(1) << (bit % 64)); }
    bool test(int row, int bit) const {
        return (bits_[std::size_t(row) * words_ + bit / 64] >> (bit % 64)) & 1;
    }
    void merge(int dst, int src) {
        auto* d = &bits_[std::size_t(dst) * words_];
        const auto* s = &bits_[std::size_t(src) * words_];
        for (int w = 0; w < words_; ++w) d[w] |= s[w];
    }

  private:
    int words_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace

GateDag GateDag::build(const Circuit& c) {
    const int n = static_cast<int>(c.gates.size());
    GateDag dag;
    dag.n_nodes = n;
    dag.succ.assign(n, {});
    dag.pred.assign(n, {});

    std::vector<int> last_on_qubit(c.n_qubits, -1);
    for (int i = 0; i < n; ++i) {
        const Gate& g = c.gates[i];
        int prev[2] = {-1, -1};
        for (int k = 0; k < g.arity(); ++k) {
            prev[k] = last_on_qubit[g.qubits[k]];
            last_on_qubit[g.qubits[k]] = i;
        }
        // Dedupe the (at most two) incoming edges.
        if (prev[0] == prev[1]) prev[1] = -1;
        for (int p : prev) {
            if (p >= 0) {
                dag.succ[p].push_back(i);
                dag.pred[i].push_back(p);
            }
        }
    }

    // Transitive reduction. Nodes are already in topological order (edges go
    // from lower to higher index), so a reverse sweep computes reachability
    // via paths of length >= 1 below each node.
    const int words = (n + 63) / 64;
    if (n > 0) {
        ReachSet reach(n, words);
        for (int u = n - 1; u >= 0; --u) {
            for (int s : dag.succ[u]) {
                reach.set(u, s);
                reach.merge(u, s);
            }
        }
        for (int u = 0; u < n; ++u) {
            auto& ss = dag.succ[u];
            std::vector<int> kept;
            kept.reserve(ss.size());
            for (int v : ss) {
                bool transitive = false;
                for (int s : ss) {
                    if (s != v && reach.test(s, v)) {
                        transitive = true;
                        break;
                    }
                }
                if (!transitive) kept.push_back(v);
            }
            ss = std::move(kept);
        }
        for (auto& p : dag.pred) p.clear();
        for (int u = 0; u < n; ++u)
            for (int v : dag.succ[u]) dag.pred[v].push_back(u);
    }
    return dag;
}

std::size_t GateDag::edge_count() const {
    std::size_t e = 0;
    for (const auto& s : succ) e += s.size();
    return e;
}

std::vector<int> GateDag::asap_levels() const {
    std::vector<int> level(n_nodes, 1);
    for (int i = 0; i < n_nodes; ++i)
        for (int p : pred[i]) level[i] = std::max(level[i], level[p] + 1);
    return level;
}

int GateDag::layer_depth() const {
    int depth = 0;
    for (int l : asap_levels()) depth = std::max(depth, l);
    return depth;
}

double GateDag::weighted_makespan(const std::function<double(int)>& latency) const {
    double makespan = 0.0;
    std::vector<double> finish(n_nodes, 0.0);
    for (int i = 0; i < n_nodes; ++i) {
        double start = 0.0;
        for (int p : pred[i]) start = std::max(start, finish[p]);
        finish[i] = start + latency(i);
        makespan = std::max(makespan, finish[i]);
    }
    return makespan;
}

}  // namespace dqc
