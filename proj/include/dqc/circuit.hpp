/** \file
 * Gate-level circuit IR: gate kinds, circuits, and validation.
 *
 * A Circuit is an ordered gate list over n_qubits. The stored order is the
 * canonical linearization; dependency structure is derived on demand (see
 * dag.hpp). All types are immutable value types after construction.
 */
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqc {

enum class GateKind : std::uint8_t {
    H,
    X,
    RX,
    RZ,
    RZZ,
    CNOT,
    CPHASE,
    SWAP,
    MEASURE,
};

constexpr bool is_two_qubit(GateKind k) {
    return k == GateKind::RZZ || k == GateKind::CNOT || k == GateKind::CPHASE ||
           k == GateKind::SWAP;
}

constexpr bool has_angle(GateKind k) {
    return k == GateKind::RX || k == GateKind::RZ || k == GateKind::RZZ ||
           k == GateKind::CPHASE;
}

const char* kind_name(GateKind k);

struct Gate {
    GateKind kind = GateKind::H;
    std::array<int, 2> qubits{0, -1};  // qubits[1] == -1 for 1Q gates
    double theta = 0.0;

    int arity() const { return is_two_qubit(kind) ? 2 : 1; }
    int q0() const { return qubits[0]; }
    int q1() const { return qubits[1]; }
    bool uses(int q) const { return qubits[0] == q || (arity() == 2 && qubits[1] == q); }
    bool shares_qubit(const Gate& other) const;

    static Gate h(int q) { return {GateKind::H, {q, -1}, 0.0}; }
    static Gate x(int q) { return {GateKind::X, {q, -1}, 0.0}; }
    static Gate rx(double theta, int q) { return {GateKind::RX, {q, -1}, theta}; }
    static Gate rz(double theta, int q) { return {GateKind::RZ, {q, -1}, theta}; }
    static Gate rzz(double theta, int a, int b) { return {GateKind::RZZ, {a, b}, theta}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, 0.0}; }
    static Gate cphase(double theta, int a, int b) { return {GateKind::CPHASE, {a, b}, theta}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}, 0.0}; }
    static Gate measure(int q) { return {GateKind::MEASURE, {q, -1}, 0.0}; }

    friend bool operator==(const Gate& a, const Gate& b) {
        return a.kind == b.kind && a.qubits == b.qubits && a.theta == b.theta;
    }
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {}

    void add(const Gate& g) { gates.push_back(g); }
    std::size_t size() const { return gates.size(); }

    /// Throws std::invalid_argument on out-of-range or duplicated qubit
    /// indices and on arity mismatches.
    void validate() const;

    std::size_t count_1q() const;
    std::size_t count_2q() const;

    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.n_qubits == b.n_qubits && a.gates == b.gates;
    }
};

}  // namespace dqc
