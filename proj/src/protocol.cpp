// protocol.cpp — Driven strokes: rotating linear-ramp Hamiltonian and its propagator

#include "otto/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "otto/errors.hpp"

namespace otto {

void DriveProtocol::validate() const {
    if (!(omega_c > 0.0) || !(omega_h > omega_c))
        throw std::invalid_argument("drive protocol requires omega_h > omega_c > 0");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("drive protocol requires tau > 0");
    if (steps < 1) throw std::invalid_argument("drive protocol requires at least one step");
}

Complex2x2 cold_hamiltonian(double omega_c) { return 0.5 * omega_c * pauli::x(); }
Complex2x2 hot_hamiltonian(double omega_h) { return 0.5 * omega_h * pauli::z(); }

PropagatorResult::PropagatorResult(const Complex2x2& u, const EnergyBasis& in, const EnergyBasis& out)
    : U(u), basis_in(in), basis_out(out) {
    xi = std::norm(amplitude(Level::excited, Level::ground));
}

cplx PropagatorResult::amplitude(Level out, Level in) const {
    return basis_out.ket(out).dot(U * basis_in.ket(in));
}

namespace {

// Compression schedule evaluated at s in [0, tau].
Complex2x2 ramp(double omega_c, double omega_h, double tau, double s) {
    const double f = s / tau;
    const double w = omega_c * (1.0 - f) + omega_h * f;
    const double phi = 0.5 * std::numbers::pi * f;
    return 0.5 * w * (std::cos(phi) * pauli::x() + std::sin(phi) * pauli::z());
}

} // namespace

Complex2x2 drive_hamiltonian(const DriveProtocol& p, double t) {
    p.validate();
    if (!(t >= 0.0 && t <= p.tau)) throw std::out_of_range("drive_hamiltonian: t outside the stroke window");
    const double s = p.direction == Direction::compression ? t : p.tau - t;
    return ramp(p.omega_c, p.omega_h, p.tau, s);
}

Complex2x2 pauli_exponential(const Complex2x2& h, double dt) {
    // h = ax sx + ay sy + az sz
    const double ax = h(0, 1).real();
    const double ay = -h(0, 1).imag();
    const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double norm = std::sqrt(ax * ax + ay * ay + az * az);
    const double phase = norm * dt;
    const double c = std::cos(phase);
    const double s = norm > 0.0 ? std::sin(phase) / norm : dt;
    const cplx mi(0.0, -1.0);
    Complex2x2 u;
    u(0, 0) = c + mi * s * az;
    u(1, 1) = c - mi * s * az;
    u(0, 1) = mi * s * cplx(ax, -ay);
    u(1, 0) = mi * s * cplx(ax, ay);
    return u;
}

PropagatorResult propagate(const DriveProtocol& p) {
    p.validate();
    const double dt = p.tau / p.steps;
    Complex2x2 u = Complex2x2::Identity();
    for (int k = 0; k < p.steps; ++k) {
        const double tm = (k + 0.5) * dt;
        u = pauli_exponential(drive_hamiltonian(p, tm), dt) * u;
    }
    const bool comp = p.direction == Direction::compression;
    const EnergyBasis cold = eigenbasis(cold_hamiltonian(p.omega_c));
    const EnergyBasis hot = eigenbasis(hot_hamiltonian(p.omega_h));
    return comp ? PropagatorResult(u, cold, hot) : PropagatorResult(u, hot, cold);
}

double transition_probability(const PropagatorResult& res) { return res.xi; }

double coherence_coupling(const PropagatorResult& res, const DensityMatrix& rho) {
    const cplx ugg = res.amplitude(Level::ground, Level::ground);
    const cplx uge = res.amplitude(Level::ground, Level::excited);
    const cplx rge = res.basis_in.element(rho.matrix(), Level::ground, Level::excited);
    return -(ugg * rge * std::conj(uge)).real();
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Complex2x2& u) {
    if (!is_unitary(u, 1e-10)) throw InvalidStateError("apply_unitary: operator is not unitary");
    return DensityMatrix(u * rho.matrix() * u.adjoint());
}

} // namespace otto
