#include "dqc/scheduler.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "dqc/unitary.hpp"
#include "json.hpp"

namespace dqc {

const char* policy_name(Policy p) {
    switch (p) {
        case Policy::Original: return "original";
        case Policy::Asap: return "asap";
        case Policy::Alap: return "alap";
    }
    return "?";
}

int segment_size(int n_comm_pairs, double p_succ) {
    if (n_comm_pairs <= 0 || p_succ < 0)
        throw std::invalid_argument("segment_size: inputs must be positive");
    return std::max(1, static_cast<int>(std::lround(n_comm_pairs * p_succ)));
}

std::vector<Segment> segment_circuit(const DistributedCircuit& dc, int m) {
    if (m < 1) throw std::invalid_argument("segment_circuit: m must be >= 1");
    const int n = static_cast<int>(dc.circuit.gates.size());

    std::vector<Segment> segments;
    Segment current;
    int remotes_seen = 0;
    for (int i = 0; i < n; ++i) {
        if (dc.remote[i]) {
            ++current.remote_count;
            ++remotes_seen;
        }
        // Close after the m-th remote gate, but only when another remote
        // gate follows; trailing locals stay in the last segment.
        if (current.remote_count == m && remotes_seen < dc.remote_count) {
            current.end = i + 1;
            segments.push_back(current);
            current = Segment{i + 1, i + 1, 0};
        }
    }
    current.end = n;
    if (current.end > current.begin || segments.empty()) segments.push_back(current);
    return segments;
}

std::vector<int> compile_variant(const DistributedCircuit& dc, const Segment& seg,
                                 Policy policy) {
    std::vector<int> order;
    order.reserve(seg.end - seg.begin);
    for (int i = seg.begin; i < seg.end; ++i) order.push_back(i);
    if (policy == Policy::Original) return order;

    const auto& gates = dc.circuit.gates;
    const std::size_t len = order.size();
    const std::size_t move_cap = len * len;
    std::size_t moves = 0;

    bool changed = true;
    while (changed && moves < move_cap) {
        changed = false;
        if (policy == Policy::Asap) {
            // Remote gates in increasing original order; each bubbles toward
            // the front past commuting non-remote gates.
            for (std::size_t pos = 0; pos < len; ++pos) {
                if (!dc.remote[order[pos]]) continue;
                std::size_t p = pos;
                while (p > 0 && moves < move_cap) {
                    const int prev = order[p - 1];
                    if (dc.remote[prev]) break;
                    if (!commutes(gates[prev], gates[order[p]])) break;
                    std::swap(order[p - 1], order[p]);
                    --p;
                    ++moves;
                    changed = true;
                }
            }
        } else {
            // ALAP: remote gates in decreasing original order bubble toward
            // the segment end.
            for (std::size_t r = len; r-- > 0;) {
                if (!dc.remote[order[r]]) continue;
                std::size_t p = r;
                while (p + 1 < len && moves < move_cap) {
                    const int next = order[p + 1];
                    if (dc.remote[next]) break;
                    if (!commutes(gates[order[p]], gates[next])) break;
                    std::swap(order[p], order[p + 1]);
                    ++p;
                    ++moves;
                    changed = true;
                }
            }
        }
    }
    return order;
}

Policy select_policy(int available_links, int m) {
    if (available_links < 0) throw std::invalid_argument("select_policy: negative link count");
    if (available_links > m) return Policy::Asap;
    if (available_links == 0) return Policy::Alap;
    return Policy::Original;
}

VariantTable VariantTable::compile(const DistributedCircuit& dc, int m) {
    VariantTable table;
    table.m = m;
    table.segments = segment_circuit(dc, m);
    table.orders.reserve(table.segments.size());
    for (const Segment& seg : table.segments) {
        table.orders.push_back({compile_variant(dc, seg, Policy::Original),
                                compile_variant(dc, seg, Policy::Asap),
                                compile_variant(dc, seg, Policy::Alap)});
    }
    return table;
}

std::string VariantTable::to_json(const DistributedCircuit& dc) const {
    nlohmann::json j;
    j["m"] = m;
    j["segments"] = nlohmann::json::array();
    for (std::size_t s = 0; s < segments.size(); ++s) {
        nlohmann::json seg;
        seg["begin"] = segments[s].begin;
        seg["end"] = segments[s].end;
        seg["remote_count"] = segments[s].remote_count;
        for (int p = 0; p < 3; ++p) {
            nlohmann::json ord = nlohmann::json::array();
            for (int gi : orders[s][p]) {
                const Gate& g = dc.circuit.gates[gi];
                nlohmann::json jg;
                jg["index"] = gi;
                jg["kind"] = kind_name(g.kind);
                jg["qubits"] = (g.arity() == 2)
                                   ? nlohmann::json::array({g.q0(), g.q1()})
                                   : nlohmann::json::array({g.q0()});
                if (has_angle(g.kind)) jg["theta"] = g.theta;
                jg["remote"] = static_cast<bool>(dc.remote[gi]);
                ord.push_back(jg);
            }
            seg[policy_name(static_cast<Policy>(p))] = ord;
        }
        j["segments"].push_back(seg);
    }
    return j.dump(2);
}

void VariantTable::save_json(const DistributedCircuit& dc, const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << to_json(dc) << "\n";
}

}  // namespace dqc
