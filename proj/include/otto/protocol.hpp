// protocol.hpp — Driven strokes: rotating linear-ramp Hamiltonian and its propagator

#pragma once

#include "otto/qubit.hpp"

namespace otto {

enum class Direction { compression, expansion };

struct DriveProtocol {
    double omega_c{0.0}; // rad/s
    double omega_h{0.0}; // rad/s
    double tau{0.0};     // s
    Direction direction{Direction::compression};
    int steps{2000};

    void validate() const;
};

// H_c = (w_c/2) sigma_x and H_h = (w_h/2) sigma_z, the endpoints of the ramp.
Complex2x2 cold_hamiltonian(double omega_c);
Complex2x2 hot_hamiltonian(double omega_h);

struct PropagatorResult {
    Complex2x2 U;
    EnergyBasis basis_in;
    EnergyBasis basis_out;
    double xi{0.0};

    PropagatorResult() = default;
    PropagatorResult(const Complex2x2& u, const EnergyBasis& in, const EnergyBasis& out);

    // <a(out)| U |b(in)>
    cplx amplitude(Level out, Level in) const;
};

Complex2x2 drive_hamiltonian(const DriveProtocol& p, double t);

// Exact exp(-i H dt) for a traceless Hermitian 2x2 H.
Complex2x2 pauli_exponential(const Complex2x2& h, double dt);

PropagatorResult propagate(const DriveProtocol& p);

double transition_probability(const PropagatorResult& res);

// -Re[ U^{gg} <g|rho|e> conj(U^{ge}) ] with rho in basis_in
double coherence_coupling(const PropagatorResult& res, const DensityMatrix& rho);

DensityMatrix apply_unitary(const DensityMatrix& rho, const Complex2x2& u);

} // namespace otto
