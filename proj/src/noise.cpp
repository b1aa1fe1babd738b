#include "dqc/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace dqc {

double werner_fidelity(double f0, double kappa, double t) {
    if (t < 0) throw std::invalid_argument("werner_fidelity: negative time");
    const double decay = std::exp(-2.0 * kappa * t);
    return f0 * decay + (1.0 - decay) / 4.0;
}

double idle_factor(double kappa, double t) {
    if (t < 0) throw std::invalid_argument("idle_factor: negative time");
    return std::exp(-kappa * t);
}

CMatrix bell_density_matrix(double fidelity) {
    if (fidelity < 0.25 || fidelity > 1.0)
        throw std::invalid_argument("bell_density_matrix: fidelity outside [0.25, 1]");
    const double lambda = (4.0 * fidelity - 1.0) / 3.0;
    CMatrix rho(4);
    // |Phi+> = (|00> + |11>)/sqrt(2): projector entries at {0,3}x{0,3}.
    for (int i : {0, 3})
        for (int j : {0, 3}) rho.at(i, j) = lambda * 0.5;
    for (int i = 0; i < 4; ++i) rho.at(i, i) += (1.0 - lambda) / 4.0;
    return rho;
}

namespace {

// Density matrix over a handful of qubits; qubit 0 is the least significant
// basis bit, matching unitary.hpp.
class DensityMatrix {
  public:
    explicit DensityMatrix(int n_qubits) : n_(n_qubits), dim_(1 << n_qubits), rho_(dim_) {}

    int dim() const { return dim_; }
    cplx& at(int i, int j) { return rho_.at(i, j); }
    const cplx& at(int i, int j) const { return rho_.at(i, j); }

    void apply_unitary(const Gate& g) {
        // rho -> U rho U^dagger, one statevector pass over columns (kets)
        // and one over rows (bras, with the conjugated matrix).
        std::vector<cplx> vec(dim_);
        for (int j = 0; j < dim_; ++j) {
            for (int i = 0; i < dim_; ++i) vec[i] = rho_.at(i, j);
            apply_gate(vec, n_, g);
            for (int i = 0; i < dim_; ++i) rho_.at(i, j) = vec[i];
        }
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < dim_; ++j) vec[j] = std::conj(rho_.at(i, j));
            apply_gate(vec, n_, g);
            for (int j = 0; j < dim_; ++j) rho_.at(i, j) = std::conj(vec[j]);
        }
    }

    // Two-qubit depolarizing channel on (qa, qb):
    // rho -> (1-p) rho + p * Tr_ab(rho) (x) I/4.
    void depolarize2(int qa, int qb, double p) {
        if (p == 0.0) return;
        const int ba = 1 << qa, bb = 1 << qb;
        CMatrix out(dim_);
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < dim_; ++j) {
                cplx v = (1.0 - p) * rho_.at(i, j);
                if ((i & ba) == (j & ba) && (i & bb) == (j & bb)) {
                    const int i0 = i & ~(ba | bb);
                    const int j0 = j & ~(ba | bb);
                    cplx marg(0, 0);
                    for (int x = 0; x < 4; ++x) {
                        const int emb = ((x & 1) ? ba : 0) | ((x & 2) ? bb : 0);
                        marg += rho_.at(i0 | emb, j0 | emb);
                    }
                    v += (p / 4.0) * marg;
                }
                out.at(i, j) = v;
            }
        }
        rho_ = std::move(out);
    }

    // Z-basis measurement of `q` with classical readout flip probability
    // `flip`, followed by `correction` (conditioned on the reported outcome
    // being 1), averaged over outcomes. The measured qubit is left dephased
    // in place.
    void measure_with_correction(int q, double flip, const Gate& correction) {
        const int bq = 1 << q;
        DensityMatrix kept(n_), flipped(n_);
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < dim_; ++j) {
                if ((i & bq) != (j & bq)) continue;  // dephased
                if (i & bq)
                    kept.at(i, j) = rho_.at(i, j);  // true outcome 1
                else
                    flipped.at(i, j) = rho_.at(i, j);  // true outcome 0
            }
        }
        // Reported 1 -> apply correction: true-1 branch unflipped plus
        // true-0 branch flipped.
        DensityMatrix corrected(n_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                corrected.at(i, j) = (1.0 - flip) * kept.at(i, j) + flip * flipped.at(i, j);
        corrected.apply_unitary(correction);
        // Reported 0 -> no correction.
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                rho_.at(i, j) = (1.0 - flip) * flipped.at(i, j) + flip * kept.at(i, j) +
                                corrected.at(i, j);
    }

  private:
    int n_;
    int dim_;
    CMatrix rho_;
};

}  // namespace

double teleported_gate_fidelity(double f_bell, const NoiseParams& p) {
    // Qubit layout: 0 = data control C, 1 = data target T, 2 = resource half
    // A (control side), 3 = resource half B (target side), 4/5 = reference
    // qubits entangled with C/T for the entanglement-fidelity evaluation.
    constexpr int C = 0, T = 1, A = 2, B = 3, R1 = 4, R2 = 5;
    DensityMatrix rho(6);

    // |Phi+>_{C,R1} (x) |Phi+>_{T,R2} (x) rho_Werner(A,B).
    const CMatrix werner = bell_density_matrix(f_bell);
    for (int ab_k = 0; ab_k < 4; ++ab_k) {
        for (int ab_b = 0; ab_b < 4; ++ab_b) {
            const cplx w = werner.at(ab_k, ab_b);
            if (w == cplx(0, 0)) continue;
            // Data/reference part: (1/4) sum_{ct, ct'} |ct, ct> <ct', ct'|.
            for (int ct_k = 0; ct_k < 4; ++ct_k) {
                for (int ct_b = 0; ct_b < 4; ++ct_b) {
                    const int ket = ((ct_k & 1) << C) | (((ct_k >> 1) & 1) << T) |
                                    ((ab_k & 1) << A) | (((ab_k >> 1) & 1) << B) |
                                    ((ct_k & 1) << R1) | (((ct_k >> 1) & 1) << R2);
                    const int bra = ((ct_b & 1) << C) | (((ct_b >> 1) & 1) << T) |
                                    ((ab_b & 1) << A) | (((ab_b >> 1) & 1) << B) |
                                    ((ct_b & 1) << R1) | (((ct_b >> 1) & 1) << R2);
                    rho.at(ket, bra) += 0.25 * w;
                }
            }
        }
    }

    const double p_depol = 4.0 * (1.0 - p.f_cnot) / 3.0;  // avg fidelity -> depolarizing weight
    const double flip = 1.0 - p.f_meas;

    // Control side: CNOT(C -> A), measure A in Z, X correction on B.
    rho.apply_unitary(Gate::cnot(C, A));
    rho.depolarize2(C, A, p_depol);
    rho.measure_with_correction(A, flip, Gate::x(B));

    // Target side: CNOT(B -> T), measure B in X, Z correction on C. RZ(pi)
    // equals Z up to a global phase, which cancels under conjugation.
    rho.apply_unitary(Gate::cnot(B, T));
    rho.depolarize2(B, T, p_depol);
    rho.apply_unitary(Gate::h(B));
    rho.measure_with_correction(B, flip, Gate::rz(3.14159265358979323846, C));

    // Entanglement fidelity against the ideal CNOT: overlap with
    // (CNOT_{CT} (x) I_R) |Phi>, where |Phi> = (1/2) sum |ct>|ct>.
    double f_ent = 0.0;
    for (int ct_k = 0; ct_k < 4; ++ct_k) {
        for (int ct_b = 0; ct_b < 4; ++ct_b) {
            // Ideal CNOT on (control = C bit, target = T bit).
            auto ideal = [](int ct) { return (ct & 1) ? (ct ^ 2) : ct; };
            const int ket_ct = ideal(ct_k);
            const int bra_ct = ideal(ct_b);
            // <Phi_ideal| rho |Phi_ideal> summing over the traced-out A,B.
            for (int ab = 0; ab < 4; ++ab) {
                const int ket = ((ket_ct & 1) << C) | (((ket_ct >> 1) & 1) << T) |
                                ((ab & 1) << A) | (((ab >> 1) & 1) << B) | ((ct_k & 1) << R1) |
                                (((ct_k >> 1) & 1) << R2);
                const int bra = ((bra_ct & 1) << C) | (((bra_ct >> 1) & 1) << T) |
                                ((ab & 1) << A) | (((ab >> 1) & 1) << B) | ((ct_b & 1) << R1) |
                                (((ct_b >> 1) & 1) << R2);
                f_ent += 0.25 * std::real(rho.at(bra, ket));
            }
        }
    }
    return (4.0 * f_ent + 1.0) / 5.0;
}

RemoteFidelityTable::RemoteFidelityTable(double f0, double kappa, const NoiseParams& p,
                                         int n_knots)
    : f0_(f0), kappa_(kappa) {
    if (n_knots < 2) n_knots = 2;
    ages_.resize(n_knots);
    fids_.resize(n_knots);
    if (kappa <= 0.0) {
        // No decay: constant fidelity at every age.
        const double f = teleported_gate_fidelity(f0, p);
        for (int i = 0; i < n_knots; ++i) {
            ages_[i] = i;
            fids_[i] = f;
        }
        x_min_ = 1.0;
        return;
    }
    // Knots uniform in x = exp(-2*kappa*age); the oldest knot is where the
    // Werner fidelity sits within 1e-9 of its 0.25 asymptote.
    x_min_ = (f0 > 0.25) ? 1e-9 / (f0 - 0.25) : 1.0;
    if (x_min_ >= 1.0) x_min_ = 0.5;
    for (int i = 0; i < n_knots; ++i) {
        const double x = 1.0 - (1.0 - x_min_) * double(i) / (n_knots - 1);
        ages_[i] = -std::log(x) / (2.0 * kappa);
        fids_[i] = teleported_gate_fidelity(werner_fidelity(f0, kappa, ages_[i]), p);
    }
}

double RemoteFidelityTable::lookup(double age) const {
    if (age <= 0.0) return fids_.front();
    if (kappa_ <= 0.0) return fids_.front();
    const double x = std::exp(-2.0 * kappa_ * age);
    if (x <= x_min_) return fids_.back();
    const int n = static_cast<int>(ages_.size());
    const double step = (1.0 - x_min_) / (n - 1);
    int idx = static_cast<int>((1.0 - x) / step);
    if (idx >= n - 1) idx = n - 2;
    const double x_hi = 1.0 - step * idx;      // knot idx (younger)
    const double x_lo = 1.0 - step * (idx + 1);  // knot idx+1 (older)
    const double t = (x_hi - x) / (x_hi - x_lo);
    return fids_[idx] * (1.0 - t) + fids_[idx + 1] * t;
}

}  // namespace dqc
