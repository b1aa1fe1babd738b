/** \file
 * Dense complex matrices and the small statevector oracle used for
 * equivalence verification and commutation checks. Qubit 0 is the least
 * significant bit of a basis index. Circuits up to 12 qubits are accepted;
 * everything here is meant for verification, not simulation at scale.
 */
#pragma once

#include <complex>
#include <vector>

#include "dqc/circuit.hpp"

namespace dqc {

using cplx = std::complex<double>;

struct CMatrix {
    int dim = 0;
    std::vector<cplx> a;  // row-major

    CMatrix() = default;
    explicit CMatrix(int d) : dim(d), a(std::size_t(d) * d, cplx(0, 0)) {}

    cplx& at(int r, int c) { return a[std::size_t(r) * dim + c]; }
    const cplx& at(int r, int c) const { return a[std::size_t(r) * dim + c]; }

    static CMatrix identity(int d);
    CMatrix mul(const CMatrix& rhs) const;
    double max_abs_diff(const CMatrix& rhs) const;
    bool is_unitary(double tol) const;
};

/// The gate's local matrix; 2x2 for 1Q kinds, 4x4 for 2Q kinds, with the
/// gate's first operand as the least significant bit of the local index.
/// MEASURE has no matrix and is rejected.
CMatrix gate_matrix(GateKind kind, double theta);

/// In-place statevector update; `state` has 2^n_qubits amplitudes.
void apply_gate(std::vector<cplx>& state, int n_qubits, const Gate& g);

/// Full 2^n x 2^n unitary of the circuit, built column by column.
/// Rejects circuits with MEASURE gates or more than 12 qubits.
CMatrix circuit_unitary(const Circuit& c);

/// True iff v == exp(i*phi) * u for some phi, within `tol` max-abs after
/// aligning the phase on u's largest-magnitude entry. Dimension mismatch
/// throws.
bool equivalent_up_to_phase(const CMatrix& u, const CMatrix& v, double tol = 1e-8);

/// True iff the unitaries of a and b commute on the union of their qubits.
/// Disjoint-qubit gates always commute. MEASURE never commutes with a gate
/// sharing its qubit. Shared-qubit pairs are decided by explicit matrix
/// multiplication on the (at most 3) union qubits, tolerance 1e-10, and the
/// result is memoized on (kinds, angles, operand overlap pattern).
bool commutes(const Gate& a, const Gate& b);

}  // namespace dqc
