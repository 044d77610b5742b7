// bath.cpp — Squeezed and thermal isochores: occupations, analytic and numeric evolution

#include "otto/bath.hpp"

#include <cmath>
#include <stdexcept>

#include "otto/errors.hpp"
#include "otto/protocol.hpp"

namespace otto {

BathSpec BathSpec::hot(double beta, double r, double theta, double gamma, double omega) {
    BathSpec s{beta, r, theta, gamma, omega, BathKind::hot_squeezed};
    s.validate();
    return s;
}

BathSpec BathSpec::cold(double beta, double gamma, double omega) {
    BathSpec s{beta, 0.0, 0.0, gamma, omega, BathKind::cold_thermal};
    s.validate();
    return s;
}

void BathSpec::validate() const {
    if (!(beta > 0.0) || !(gamma > 0.0) || !(omega > 0.0) || !(r >= 0.0))
        throw std::invalid_argument("bath spec requires beta, gamma, omega > 0 and r >= 0");
    if (!std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(omega) || !std::isfinite(r) ||
        !std::isfinite(theta))
        throw std::invalid_argument("bath spec has non-finite fields");
    if (kind == BathKind::cold_thermal && r != 0.0) throw std::invalid_argument("cold thermal bath cannot be squeezed");
}

Complex2x2 BathSpec::hamiltonian() const {
    return kind == BathKind::hot_squeezed ? hot_hamiltonian(omega) : cold_hamiltonian(omega);
}

EnergyBasis BathSpec::basis() const { return eigenbasis(hamiltonian()); }

cplx BathSpec::m_coefficient() const {
    return -0.5 * std::sinh(2.0 * r) * std::polar(1.0, theta) * (2.0 * thermal_occupation(*this) + 1.0);
}

double thermal_occupation(const BathSpec& spec) { return 1.0 / std::expm1(spec.beta * spec.omega); }

double squeezed_occupation(const BathSpec& spec) {
    const double n = thermal_occupation(spec);
    const double sh = std::sinh(spec.r);
    return n * std::cosh(2.0 * spec.r) + sh * sh;
}

double effective_inverse_temperature(const BathSpec& spec) {
    const double n = squeezed_occupation(spec);
    return std::log1p(1.0 / n) / spec.omega;
}

double relaxation_time(const BathSpec& spec) {
    spec.validate();
    return 1.0 / (spec.gamma * (2.0 * squeezed_occupation(spec) + 1.0));
}

DensityMatrix stationary_state(const BathSpec& spec) {
    const double n = squeezed_occupation(spec);
    return DensityMatrix::diagonal_in(spec.basis(), (n + 1.0) / (2.0 * n + 1.0), n / (2.0 * n + 1.0));
}

DensityMatrix isochore_state(const DensityMatrix& rho_in, const BathSpec& spec, double t) {
    const EnergyBasis b = spec.basis();
    const Complex2x2 r0 = b.to_basis(rho_in.matrix()); // index 0 = ground
    const double n = squeezed_occupation(spec);
    const double rate = spec.gamma * (2.0 * n + 1.0);
    const double a = std::sinh(2.0 * spec.r) * (2.0 * thermal_occupation(spec) + 1.0);

    const double sz0 = r0(1, 1).real() - r0(0, 0).real();
    const double decay = std::exp(-rate * t);
    const double sz = decay * sz0 - (1.0 - decay) / (2.0 * n + 1.0);

    // x = <e|rho|g>; envelopes e^{-rate t/2} cosh / sinh of (gamma a t / 2), written overflow-free
    const double slow = std::exp(-0.5 * (rate - spec.gamma * a) * t);
    const double fast = std::exp(-0.5 * (rate + spec.gamma * a) * t);
    const double ch = 0.5 * (slow + fast);
    const double sh = 0.5 * (slow - fast);
    const cplx x0 = r0(1, 0);
    const cplx x = std::polar(1.0, -spec.omega * t) * (ch * x0 + sh * std::polar(1.0, spec.theta) * std::conj(x0));

    Complex2x2 out;
    out(1, 1) = 0.5 * (1.0 + sz);
    out(0, 0) = 0.5 * (1.0 - sz);
    out(1, 0) = x;
    out(0, 1) = std::conj(x);
    return DensityMatrix(b.from_basis(out));
}

namespace {

IsochoreSolution sample_analytic(const DensityMatrix& rho_in, const BathSpec& spec, double tau, int samples) {
    spec.validate();
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("isochore duration must be >= 0");
    if (samples < 2) throw std::invalid_argument("isochore needs at least two samples");
    IsochoreSolution sol;
    sol.times.reserve(samples);
    sol.states.reserve(samples);
    for (int k = 0; k < samples; ++k) {
        const double t = k == samples - 1 ? tau : tau * k / (samples - 1);
        sol.times.push_back(t);
        sol.states.push_back(k == 0 ? rho_in : isochore_state(rho_in, spec, t));
    }
    return sol;
}

Complex2x2 dissipator(const Complex2x2& l, const Complex2x2& rho) {
    const Complex2x2 ld = l.adjoint();
    const Complex2x2 ldl = ld * l;
    return l * rho * ld - 0.5 * (ldl * rho + rho * ldl);
}

} // namespace

IsochoreSolution evolve_hot_analytic(const DensityMatrix& rho_in, const BathSpec& spec, double tau, int samples) {
    if (spec.kind != BathKind::hot_squeezed) throw BasisAlignmentError("evolve_hot_analytic needs a hot squeezed bath");
    return sample_analytic(rho_in, spec, tau, samples);
}

IsochoreSolution evolve_cold_analytic(const DensityMatrix& rho_in, const BathSpec& spec, double tau, int samples) {
    if (spec.kind != BathKind::cold_thermal) throw BasisAlignmentError("evolve_cold_analytic needs a cold thermal bath");
    return sample_analytic(rho_in, spec, tau, samples);
}

namespace {

// Time-independent pieces of the master equation, built once per integration.
struct Generator {
    Complex2x2 h, sp, sm;
    double amp_minus, amp_plus, ch, sh, gamma, theta, omega;

    explicit Generator(const BathSpec& spec) {
        const EnergyBasis b = spec.basis();
        sp = b.ket(Level::excited) * b.ket(Level::ground).adjoint();
        sm = sp.adjoint();
        const double nth = thermal_occupation(spec);
        amp_minus = std::sqrt(nth + 1.0);
        amp_plus = std::sqrt(nth);
        ch = std::cosh(spec.r);
        sh = std::sinh(spec.r);
        gamma = spec.gamma;
        theta = spec.theta;
        omega = spec.omega;
        h = spec.hamiltonian();
    }

    Complex2x2 operator()(const Complex2x2& rho, double t) const {
        const cplx ph = std::polar(1.0, theta - 2.0 * omega * t);
        const Complex2x2 lm = amp_minus * (ch * sm + sh * ph * sp);
        const Complex2x2 lp = amp_plus * (ch * sp + sh * std::conj(ph) * sm);
        const cplx mi(0.0, -1.0);
        return mi * (h * rho - rho * h) + gamma * (dissipator(lm, rho) + dissipator(lp, rho));
    }
};

} // namespace

Complex2x2 master_equation_rhs(const Complex2x2& rho, const BathSpec& spec, double t) {
    spec.validate();
    return Generator(spec)(rho, t);
}

IsochoreSolution evolve_numeric(const DensityMatrix& rho_in, const BathSpec& spec, double tau, int steps, int samples) {
    spec.validate();
    if (steps < 100) throw std::invalid_argument("evolve_numeric: step count below 100");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("isochore duration must be >= 0");
    if (samples < 2 || samples > steps + 1) throw std::invalid_argument("evolve_numeric: bad sample count");
    const double h = tau / steps;
    const Generator gen(spec);
    IsochoreSolution sol;
    Complex2x2 rho = rho_in.matrix();
    int next = 1;
    sol.times.push_back(0.0);
    sol.states.push_back(rho_in);
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const Complex2x2 k1 = gen(rho, t);
        const Complex2x2 k2 = gen(rho + 0.5 * h * k1, t + 0.5 * h);
        const Complex2x2 k3 = gen(rho + 0.5 * h * k2, t + 0.5 * h);
        const Complex2x2 k4 = gen(rho + h * k3, t + h);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const long target = std::lround(static_cast<double>(next) * steps / (samples - 1));
        if (k + 1 == target) {
            sol.times.push_back((k + 1) * h);
            sol.states.emplace_back(rho);
            ++next;
        }
    }
    return sol;
}

} // namespace otto
