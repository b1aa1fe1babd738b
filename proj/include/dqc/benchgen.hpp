/** \file
 * Deterministic benchmark circuit generators: a Trotterized 1D transverse-
 * longitudinal Ising chain, QAOA MaxCut on seeded random regular graphs, and
 * the QFT without its terminal swap network.
 */
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dqc/circuit.hpp"

namespace dqc {

struct TlimAngles {
    double theta_zz = 0.5;
    double theta_z = 0.3;
    double theta_x = 0.7;
};

/// Per step: RZZ on even neighbor pairs, RZZ on odd neighbor pairs, then RZ
/// and RX on every qubit. Gate counts: 2Q = (n-1)*steps, 1Q = 2n*steps;
/// layer depth 4*steps for n >= 3.
Circuit gen_tlim(int n, int steps, const TlimAngles& angles = {});

/// Uniform random simple d-regular graph via the configuration model with
/// rejection of self-loops and multi-edges (at most 1000 retries). Edges are
/// returned sorted ascending.
std::vector<std::pair<int, int>> gen_regular_graph(int n, int degree, std::uint64_t seed);

/// H on all qubits, then per layer RZZ(gamma) per edge and RX(beta) per
/// qubit. Totals: 2Q = (n*d/2)*layers, 1Q = n + n*layers.
Circuit gen_qaoa_maxcut(int n, int degree, int layers, std::uint64_t seed, double gamma = 0.4,
                        double beta = 0.8);

/// Standard QFT without final swaps: per qubit i, H(i) then CPHASE(pi/2^k)
/// with each later qubit. Totals: 1Q = n, 2Q = n(n-1)/2; layer depth 2n-1.
Circuit gen_qft(int n);

}  // namespace dqc
