// qubit.cpp — 2x2 operators, qubit states, entropies and coherence measures

#include "otto/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "otto/errors.hpp"

namespace otto {

namespace pauli {
Complex2x2 identity() { return Complex2x2::Identity(); }
Complex2x2 x() {
    Complex2x2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
Complex2x2 y() {
    Complex2x2 m;
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return m;
}
Complex2x2 z() {
    Complex2x2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
Complex2x2 plus() {
    Complex2x2 m;
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
}
Complex2x2 minus() {
    Complex2x2 m;
    m << 0.0, 0.0, 1.0, 0.0;
    return m;
}
} // namespace pauli

namespace {

// Eigenvalues of a Hermitian 2x2 matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Complex2x2& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_tr = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    return {half_tr - r, half_tr + r};
}

// Largest-magnitude component made real-positive; ties go to the first index.
Vector2c fix_phase(Vector2c v) {
    v.normalize();
    const int k = (std::abs(v(0)) >= std::abs(v(1)) - 1e-12) ? 0 : 1;
    const cplx c = v(k);
    v *= std::conj(c) / std::abs(c);
    return v;
}

double xlogx(double p) {
    if (p <= 0.0) return 0.0;
    return p * std::log(std::max(p, 1e-300));
}

} // namespace

cplx EnergyBasis::element(const Complex2x2& m, Level a, Level b) const {
    return ket(a).dot(m * ket(b)); // dot conjugates the left operand
}

Complex2x2 EnergyBasis::matrix() const {
    Complex2x2 v;
    v.col(0) = vec[0];
    v.col(1) = vec[1];
    return v;
}

Complex2x2 EnergyBasis::to_basis(const Complex2x2& m) const {
    const Complex2x2 v = matrix();
    return v.adjoint() * m * v;
}

Complex2x2 EnergyBasis::from_basis(const Complex2x2& m) const {
    const Complex2x2 v = matrix();
    return v * m * v.adjoint();
}

EnergyBasis rephased(const EnergyBasis& b, double phase_g, double phase_e) {
    EnergyBasis out = b;
    out.vec[0] *= std::polar(1.0, phase_g);
    out.vec[1] *= std::polar(1.0, phase_e);
    return out;
}

double max_abs(const Complex2x2& m) { return m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Complex2x2& m, double tol) { return max_abs(m - m.adjoint()) <= tol; }

bool is_unitary(const Complex2x2& u, double tol) {
    return max_abs(u.adjoint() * u - Complex2x2::Identity()) <= tol;
}

DensityMatrix::DensityMatrix() : m_(0.5 * Complex2x2::Identity()) {}

DensityMatrix::DensityMatrix(const Complex2x2& m) {
    if (!m.allFinite()) throw InvalidStateError("density matrix has non-finite entries");
    if (!is_hermitian(m, kTolerance)) throw InvalidStateError("density matrix is not Hermitian");
    const cplx tr = m.trace();
    if (std::abs(tr - 1.0) > kTolerance) {
        std::ostringstream os;
        os << "density matrix trace " << tr.real() << " differs from 1";
        throw InvalidStateError(os.str());
    }
    m_ = 0.5 * (m + m.adjoint());
    if (spectrum()[0] < -kTolerance) throw InvalidStateError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const Vector2c& psi) {
    const Vector2c v = psi.normalized();
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::diagonal_in(const EnergyBasis& b, double p_ground, double p_excited) {
    Complex2x2 d = Complex2x2::Zero();
    d(0, 0) = p_ground;
    d(1, 1) = p_excited;
    return DensityMatrix(b.from_basis(d));
}

std::array<double, 2> DensityMatrix::spectrum() const { return hermitian_eigenvalues(m_); }

EnergyBasis eigenbasis(const Complex2x2& h) {
    const double scale = std::max(1.0, max_abs(h));
    if (!h.allFinite() || !is_hermitian(h, 1e-12 * scale))
        throw InvalidStateError("eigenbasis: matrix is not Hermitian");

    const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const cplx off = 0.5 * (h(0, 1) + std::conj(h(1, 0))); // ax - i ay
    const double norm = std::hypot(az, std::abs(off));

    EnergyBasis b;
    b.energy = {a0 - norm, a0 + norm};
    Vector2c up;
    if (norm <= 1e-300) {
        up << 1.0, 0.0;
    } else if (az >= 0.0) {
        up << norm + az, std::conj(off);
    } else {
        up << off, norm - az;
    }
    up.normalize();
    Vector2c down;
    down << -std::conj(up(1)), std::conj(up(0));
    b.vec[0] = fix_phase(down);
    b.vec[1] = fix_phase(up);
    return b;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const auto ev = rho.spectrum();
    return -(xlogx(ev[0]) + xlogx(ev[1]));
}

DensityMatrix dephase(const DensityMatrix& rho, const EnergyBasis& basis) {
    const double pg = basis.element(rho.matrix(), Level::ground, Level::ground).real();
    const double pe = basis.element(rho.matrix(), Level::excited, Level::excited).real();
    return DensityMatrix::diagonal_in(basis, pg, pe);
}

double relative_entropy_of_coherence(const DensityMatrix& rho, const EnergyBasis& basis) {
    const double c = von_neumann_entropy(dephase(rho, basis)) - von_neumann_entropy(rho);
    return std::max(c, 0.0);
}

double kl_divergence(const DensityMatrix& rho, const DensityMatrix& ref) {
    const EnergyBasis rb = eigenbasis(ref.matrix());
    const auto lam = ref.spectrum();
    double cross = 0.0; // Tr rho ln ref
    for (int k = 0; k < 2; ++k) {
        const double w = rb.element(rho.matrix(), Level(k), Level(k)).real();
        if (lam[k] <= 1e-14) {
            if (w > 1e-14) throw DivergenceUndefinedError("kl_divergence: state not supported by reference");
            continue;
        }
        cross += w * std::log(lam[k]);
    }
    const double d = -von_neumann_entropy(rho) - cross;
    return std::max(d, 0.0);
}

DensityMatrix gibbs_state(const Complex2x2& h, double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("gibbs_state: beta must be finite and >= 0");
    const EnergyBasis b = eigenbasis(h);
    const double x = beta * b.gap();
    const double pe = 1.0 / (1.0 + std::exp(x));
    const double pg = 1.0 / (1.0 + std::exp(-x));
    return DensityMatrix::diagonal_in(b, pg, pe);
}

double population(const DensityMatrix& rho, const EnergyBasis& basis, Level l) {
    return basis.element(rho.matrix(), l, l).real();
}

double mean_excitation(const DensityMatrix& rho, const EnergyBasis& basis) {
    return 0.5 * (population(rho, basis, Level::excited) - population(rho, basis, Level::ground));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const Complex2x2 d = a.matrix() - b.matrix();
    const auto ev = hermitian_eigenvalues(d);
    return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

double energy(const DensityMatrix& rho, const Complex2x2& h) { return (rho.matrix() * h).trace().real(); }

} // namespace otto
