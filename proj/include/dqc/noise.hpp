/** \file
 * Fidelity models: Werner-state idle decay, the teleported-gate fidelity
 * oracle (density-matrix evaluation of the CNOT teleportation circuit with a
 * Werner resource, depolarizing local CNOTs, and readout-flip measurements),
 * idle decoherence factors, and an age-indexed lookup table for remote-gate
 * fidelity.
 */
#pragma once

#include <vector>

#include "dqc/unitary.hpp"

namespace dqc {

struct NoiseParams {
    double kappa = 0.002;  // decoherence rate per local-CNOT time unit
    double f_1q = 0.9999;
    double f_cnot = 0.999;
    double f_meas = 0.998;
    double f_epr = 0.99;
};

/// F(t) = F0*exp(-2*kappa*t) + (1 - exp(-2*kappa*t))/4
double werner_fidelity(double f0, double kappa, double t);

/// exp(-kappa * t)
double idle_factor(double kappa, double t);

/// rho = lambda |Phi+><Phi+| + (1-lambda) I/4 with lambda = (4F-1)/3.
/// Basis order |q1 q0>: indices 0..3 = 00,01,10,11.
CMatrix bell_density_matrix(double fidelity);

/// Average gate fidelity of the teleported CNOT channel against the ideal
/// CNOT, from a 6-qubit density-matrix evaluation: Werner resource of
/// fidelity `f_bell`, each local CNOT followed by a two-qubit depolarizing
/// channel matching average gate fidelity f_cnot, both measurements modeled
/// as classical readout flips with probability 1 - f_meas, ideal Pauli
/// corrections. F_avg = (d*F_ent + 1)/(d+1) with d = 4.
double teleported_gate_fidelity(double f_bell, const NoiseParams& p);

/// Remote-gate fidelity as a function of link age, precomputed on a 64-knot
/// age grid (knots uniform in exp(-2*kappa*age), where the underlying curve
/// is affine) and interpolated linearly between knots. Lookup error against
/// direct evaluation stays below 1e-6.
class RemoteFidelityTable {
  public:
    RemoteFidelityTable() = default;
    RemoteFidelityTable(double f0, double kappa, const NoiseParams& p, int n_knots = 64);

    double lookup(double age) const;
    bool empty() const { return ages_.empty(); }

  private:
    double f0_ = 0.0;
    double kappa_ = 0.0;
    double x_min_ = 0.0;
    std::vector<double> ages_;
    std::vector<double> fids_;
};

}  // namespace dqc
