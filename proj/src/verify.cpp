#include "dqc/verify.hpp"

#include <random>

#include "dqc/partition.hpp"
#include "dqc/rng.hpp"
#include "dqc/scheduler.hpp"
#include "dqc/unitary.hpp"

namespace dqc {
namespace {

Gate random_gate(std::mt19937_64& rng, int n_qubits) {
    const int q0 = static_cast<int>(uniform_index(rng, n_qubits));
    int q1 = static_cast<int>(uniform_index(rng, n_qubits));
    while (q1 == q0) q1 = static_cast<int>(uniform_index(rng, n_qubits));
    const double theta = 0.1 + 3.0 * uniform_unit(rng);
    switch (uniform_index(rng, 8)) {
        case 0: return Gate::h(q0);
        case 1: return Gate::x(q0);
        case 2: return Gate::rx(theta, q0);
        case 3: return Gate::rz(theta, q0);
        case 4: return Gate::rzz(theta, q0, q1);
        case 5: return Gate::cnot(q0, q1);
        case 6: return Gate::cphase(theta, q0, q1);
        default: return Gate::swap(q0, q1);
    }
}

}  // namespace

VerifyReport verify_variant_equivalence(int max_qubits, int n_segments, std::uint64_t seed,
                                        double tol) {
    std::mt19937_64 rng(seed);
    VerifyReport report;
    report.total = n_segments;
    for (int s = 0; s < n_segments; ++s) {
        const int nq = 2 + static_cast<int>(uniform_index(rng, max_qubits - 1));
        const int len = 4 + static_cast<int>(uniform_index(rng, 15));
        Circuit c(nq);
        for (int i = 0; i < len; ++i) c.add(random_gate(rng, nq));

        // Random two-node split; crossing gates become remote.
        Assignment a;
        a.capacities = {nq, nq};
        a.node_of.resize(nq);
        for (int q = 0; q < nq; ++q) a.node_of[q] = (q < nq / 2) ? 0 : 1;
        const DistributedCircuit dc = annotate_remote(c, a);
        const Segment seg{0, static_cast<int>(c.gates.size()),
                          static_cast<int>(dc.remote_count)};

        const CMatrix reference = circuit_unitary(c);
        bool ok = true;
        for (const Policy policy : {Policy::Asap, Policy::Alap}) {
            Circuit variant(nq);
            for (int gi : compile_variant(dc, seg, policy)) variant.add(c.gates[gi]);
            if (!equivalent_up_to_phase(reference, circuit_unitary(variant), tol)) ok = false;
        }
        if (ok) ++report.passed;
    }
    return report;
}

}  // namespace dqc
