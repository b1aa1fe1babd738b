/** \file
 * Scheduling-soundness verifier: random small segments whose ASAP and ALAP
 * variants are checked for unitary equivalence against the statevector
 * oracle. Shared by the CLI `verify` command and the acceptance suite.
 */
#pragma once

#include <cstdint>

namespace dqc {

struct VerifyReport {
    int total = 0;
    int passed = 0;
};

/// Runs `n_segments` random segments with at most `max_qubits` qubits (>= 2)
/// through ASAP and ALAP compilation and the phase-equivalence check at the
/// given tolerance.
VerifyReport verify_variant_equivalence(int max_qubits, int n_segments, std::uint64_t seed,
                                        double tol = 1e-8);

}  // namespace dqc
