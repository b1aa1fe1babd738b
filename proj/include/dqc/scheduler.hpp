/** \file
 * Segmentation of a distributed circuit into m-remote-gate slices, static
 * pre-compilation of per-segment ASAP/ALAP/original variants via
 * commutation-validated adjacent transpositions, and the runtime policy rule
 * mapping buffered-link count e to a variant.
 */
#pragma once

#include <array>
#include <string>
#include <vector>

#include "dqc/partition.hpp"

namespace dqc {

enum class Policy { Original = 0, Asap = 1, Alap = 2 };

const char* policy_name(Policy p);

/// m = max(1, round(n_comm_pairs * p_succ))
int segment_size(int n_comm_pairs, double p_succ);

struct Segment {
    int begin = 0;  // gate index range [begin, end) in circuit order
    int end = 0;
    int remote_count = 0;
};

/// Greedy scan over the stored order; a segment closes after its m-th remote
/// gate unless no remote gate follows (trailing gates join the last
/// segment). A circuit without remote gates is one segment.
std::vector<Segment> segment_circuit(const DistributedCircuit& dc, int m);

/// Reordered absolute gate indices for one segment. ASAP bubbles each remote
/// gate toward the segment start past commuting non-remote gates; ALAP is
/// symmetric. Remote gates never pass one another, so equal-priority remote
/// gates keep their original relative order. The result is always a
/// commutation-valid reordering, hence unitary-equivalent to the input.
std::vector<int> compile_variant(const DistributedCircuit& dc, const Segment& seg, Policy policy);

/// e > m -> ASAP; e == 0 -> ALAP; otherwise the original order.
Policy select_policy(int available_links, int m);

struct VariantTable {
    int m = 1;
    std::vector<Segment> segments;
    // orders[s][policy] = absolute gate indices of segment s under policy.
    std::vector<std::array<std::vector<int>, 3>> orders;

    static VariantTable compile(const DistributedCircuit& dc, int m);

    const std::vector<int>& order(int segment, Policy p) const {
        return orders[segment][static_cast<int>(p)];
    }

    std::string to_json(const DistributedCircuit& dc) const;
    void save_json(const DistributedCircuit& dc, const std::string& path) const;
};

}  // namespace dqc
