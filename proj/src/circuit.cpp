#include "dqc/circuit.hpp"

namespace dqc {

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::RX: return "rx";
        case GateKind::RZ: return "rz";
        case GateKind::RZZ: return "rzz";
        case GateKind::CNOT: return "cx";
        case GateKind::CPHASE: return "cp";
        case GateKind::SWAP: return "swap";
        case GateKind::MEASURE: return "measure";
    }
    return "?";
}

bool Gate::shares_qubit(const Gate& other) const {
    for (int i = 0; i < arity(); ++i) {
        if (other.uses(qubits[i])) return true;
    }
    return false;
}

void Circuit::validate() const {
    if (n_qubits < 0) throw std::invalid_argument("circuit: negative qubit count");
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        const int ar = g.arity();
        for (int k = 0; k < ar; ++k) {
            const int q = g.qubits[k];
            if (q < 0 || q >= n_qubits) {
                throw std::invalid_argument("gate " + std::to_string(i) + " (" +
                                            kind_name(g.kind) + "): qubit index " +
                                            std::to_string(q) + " out of range");
            }
        }
        if (ar == 2 && g.qubits[0] == g.qubits[1]) {
            throw std::invalid_argument("gate " + std::to_string(i) + " (" +
                                        kind_name(g.kind) + "): duplicated qubit index " +
                                        std::to_string(g.qubits[0]));
        }
        if (ar == 1 && g.qubits[1] != -1) {
            throw std::invalid_argument("gate " + std::to_string(i) +
                                        ": single-qubit gate carries a second operand");
        }
    }
}

std::size_t Circuit::count_1q() const {
    std::size_t n = 0;
    for (const Gate& g : gates)
        if (g.arity() == 1 && g.kind != GateKind::MEASURE) ++n;
    return n;
}

std::size_t Circuit::count_2q() const {
    std::size_t n = 0;
    for (const Gate& g : gates)
        if (g.arity() == 2) ++n;
    return n;
}

}  // namespace dqc
