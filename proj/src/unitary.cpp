#include "dqc/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>

namespace dqc {

CMatrix CMatrix::identity(int d) {
    CMatrix m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::mul(const CMatrix& rhs) const {
    CMatrix out(dim);
    for (int i = 0; i < dim; ++i) {
        for (int k = 0; k < dim; ++k) {
            const cplx aik = at(i, k);
            if (aik == cplx(0, 0)) continue;
            for (int j = 0; j < dim; ++j) out.at(i, j) += aik * rhs.at(k, j);
        }
    }
    return out;
}

double CMatrix::max_abs_diff(const CMatrix& rhs) const {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - rhs.a[i]));
    return m;
}

bool CMatrix::is_unitary(double tol) const {
    // max-abs of U^dagger U - I
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            cplx s(0, 0);
            for (int k = 0; k < dim; ++k) s += std::conj(at(k, i)) * at(k, j);
            if (i == j) s -= 1.0;
            if (std::abs(s) > tol) return false;
        }
    }
    return true;
}

CMatrix gate_matrix(GateKind kind, double theta) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const cplx i_unit(0, 1);
    switch (kind) {
        case GateKind::H: {
            CMatrix m(2);
            m.at(0, 0) = inv_sqrt2;
            m.at(0, 1) = inv_sqrt2;
            m.at(1, 0) = inv_sqrt2;
            m.at(1, 1) = -inv_sqrt2;
            return m;
        }
        case GateKind::X: {
            CMatrix m(2);
            m.at(0, 1) = 1.0;
            m.at(1, 0) = 1.0;
            return m;
        }
        case GateKind::RX: {
            CMatrix m(2);
            m.at(0, 0) = std::cos(theta / 2);
            m.at(0, 1) = -i_unit * std::sin(theta / 2);
            m.at(1, 0) = -i_unit * std::sin(theta / 2);
            m.at(1, 1) = std::cos(theta / 2);
            return m;
        }
        case GateKind::RZ: {
            CMatrix m(2);
            m.at(0, 0) = std::exp(-i_unit * (theta / 2));
            m.at(1, 1) = std::exp(i_unit * (theta / 2));
            return m;
        }
        case GateKind::RZZ: {
            // exp(-i theta/2 Z(x)Z): diagonal in parity of the two bits.
            CMatrix m(4);
            const cplx even = std::exp(-i_unit * (theta / 2));
            const cplx odd = std::exp(i_unit * (theta / 2));
            m.at(0, 0) = even;
            m.at(1, 1) = odd;
            m.at(2, 2) = odd;
            m.at(3, 3) = even;
            return m;
        }
        case GateKind::CNOT: {
            // Local index = control_bit + 2*target_bit.
            CMatrix m(4);
            m.at(0, 0) = 1.0;  // |c=0,t=0>
            m.at(2, 2) = 1.0;  // |c=0,t=1>
            m.at(3, 1) = 1.0;  // |c=1,t=0> -> |c=1,t=1>
            m.at(1, 3) = 1.0;  // |c=1,t=1> -> |c=1,t=0>
            return m;
        }
        case GateKind::CPHASE: {
            CMatrix m(4);
            m.at(0, 0) = 1.0;
            m.at(1, 1) = 1.0;
            m.at(2, 2) = 1.0;
            m.at(3, 3) = std::exp(i_unit * theta);
            return m;
        }
        case GateKind::SWAP: {
            CMatrix m(4);
            m.at(0, 0) = 1.0;
            m.at(1, 2) = 1.0;
            m.at(2, 1) = 1.0;
            m.at(3, 3) = 1.0;
            return m;
        }
        case GateKind::MEASURE:
            throw std::invalid_argument("MEASURE has no unitary matrix");
    }
    throw std::invalid_argument("unknown gate kind");
}

void apply_gate(std::vector<cplx>& state, int n_qubits, const Gate& g) {
    if (g.kind == GateKind::MEASURE)
        throw std::invalid_argument("cannot apply MEASURE to a statevector");
    const CMatrix u = gate_matrix(g.kind, g.theta);
    const std::size_t dim = std::size_t(1) << n_qubits;
    if (g.arity() == 1) {
        const std::size_t bit = std::size_t(1) << g.q0();
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & bit) continue;
            const cplx s0 = state[i];
            const cplx s1 = state[i | bit];
            state[i] = u.at(0, 0) * s0 + u.at(0, 1) * s1;
            state[i | bit] = u.at(1, 0) * s0 + u.at(1, 1) * s1;
        }
    } else {
        const std::size_t b0 = std::size_t(1) << g.q0();
        const std::size_t b1 = std::size_t(1) << g.q1();
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & b0) || (i & b1)) continue;
            const std::size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
            cplx in[4];
            for (int k = 0; k < 4; ++k) in[k] = state[idx[k]];
            for (int r = 0; r < 4; ++r) {
                cplx v(0, 0);
                for (int c = 0; c < 4; ++c) v += u.at(r, c) * in[c];
                state[idx[r]] = v;
            }
        }
    }
}

CMatrix circuit_unitary(const Circuit& c) {
    if (c.n_qubits > 12)
        throw std::invalid_argument("circuit_unitary: more than 12 qubits");
    for (const Gate& g : c.gates)
        if (g.kind == GateKind::MEASURE)
            throw std::invalid_argument("circuit_unitary: circuit contains measurement");
    c.validate();
    const int dim = 1 << c.n_qubits;
    CMatrix u(dim);
    std::vector<cplx> col(dim);
    for (int j = 0; j < dim; ++j) {
        std::fill(col.begin(), col.end(), cplx(0, 0));
        col[j] = 1.0;
        for (const Gate& g : c.gates) apply_gate(col, c.n_qubits, g);
        for (int i = 0; i < dim; ++i) u.at(i, j) = col[i];
    }
    return u;
}

bool equivalent_up_to_phase(const CMatrix& u, const CMatrix& v, double tol) {
    if (u.dim != v.dim) throw std::invalid_argument("equivalent_up_to_phase: dimension mismatch");
    // Align phase on u's largest-magnitude entry.
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < u.a.size(); ++i) {
        const double m = std::abs(u.a[i]);
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    if (best_mag < tol) return v.max_abs_diff(u) <= tol;  // u ~ 0
    const cplx ratio = v.a[best] / u.a[best];
    const double mag = std::abs(ratio);
    if (std::abs(mag - 1.0) > tol) return false;
    const cplx phase = ratio / mag;
    double max_diff = 0.0;
    for (std::size_t i = 0; i < u.a.size(); ++i)
        max_diff = std::max(max_diff, std::abs(v.a[i] - phase * u.a[i]));
    return max_diff <= tol;
}

namespace {

// Gates embedded on the compacted union of their qubits; union size <= 3
// whenever the pair shares a qubit (disjoint pairs never reach here).
CMatrix embed_on_union(const Gate& g, const std::vector<int>& union_qubits) {
    Circuit c(static_cast<int>(union_qubits.size()));
    Gate local = g;
    for (int k = 0; k < g.arity(); ++k) {
        const auto it = std::find(union_qubits.begin(), union_qubits.end(), g.qubits[k]);
        local.qubits[k] = static_cast<int>(it - union_qubits.begin());
    }
    c.add(local);
    return circuit_unitary(c);
}

using MemoKey = std::tuple<int, int, double, double, int>;

// Operand overlap pattern: qubits relabeled by first appearance across
// (a.qubits, b.qubits), packed into one int.
int overlap_pattern(const Gate& a, const Gate& b) {
    std::vector<int> seen;
    auto label = [&seen](int q) {
        const auto it = std::find(seen.begin(), seen.end(), q);
        if (it != seen.end()) return static_cast<int>(it - seen.begin());
        seen.push_back(q);
        return static_cast<int>(seen.size()) - 1;
    };
    int pattern = 0;
    for (int k = 0; k < a.arity(); ++k) pattern = pattern * 8 + label(a.qubits[k]) + 1;
    for (int k = 0; k < b.arity(); ++k) pattern = pattern * 8 + label(b.qubits[k]) + 1;
    return pattern;
}

}  // namespace

bool commutes(const Gate& a, const Gate& b) {
    if (!a.shares_qubit(b)) return true;
    // Measurement is a barrier on its qubit.
    if (a.kind == GateKind::MEASURE || b.kind == GateKind::MEASURE) return false;

    const MemoKey key{static_cast<int>(a.kind), static_cast<int>(b.kind), a.theta, b.theta,
                      overlap_pattern(a, b)};
    static std::map<MemoKey, bool> memo;
    static std::mutex memo_mutex;
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        const auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    std::vector<int> union_qubits;
    for (int k = 0; k < a.arity(); ++k) union_qubits.push_back(a.qubits[k]);
    for (int k = 0; k < b.arity(); ++k)
        if (std::find(union_qubits.begin(), union_qubits.end(), b.qubits[k]) == union_qubits.end())
            union_qubits.push_back(b.qubits[k]);

    const CMatrix ma = embed_on_union(a, union_qubits);
    const CMatrix mb = embed_on_union(b, union_qubits);
    const bool result = ma.mul(mb).max_abs_diff(mb.mul(ma)) <= 1e-10;

    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(key, result);
    return result;
}

}  // namespace dqc
