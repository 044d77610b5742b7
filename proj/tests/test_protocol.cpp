#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "otto/errors.hpp"
#include "otto/protocol.hpp"
#include "test_helpers.hpp"

using namespace otto;

namespace {
const double kWc = 4.0 * M_PI * 1e3;
const double kWh = 7.2 * M_PI * 1e3;

DriveProtocol drive(double tau, Direction d = Direction::compression, int steps = 2000) {
    return DriveProtocol{kWc, kWh, tau, d, steps};
}
} // namespace

TEST(DriveHamiltonian, Endpoints) {
    const DriveProtocol p = drive(460e-6);
    EXPECT_LT(max_abs(drive_hamiltonian(p, 0.0) - 0.5 * kWc * pauli::x()), 1e-9);
    EXPECT_LT(max_abs(drive_hamiltonian(p, p.tau) - 0.5 * kWh * pauli::z()), 1e-9);
    const Complex2x2 mid = drive_hamiltonian(p, 0.5 * p.tau);
    const Complex2x2 expected = 0.25 * (kWc + kWh) * (pauli::x() + pauli::z()) / std::sqrt(2.0);
    EXPECT_LT(max_abs(mid - expected), 1e-9);
    const EnergyBasis b = eigenbasis(mid);
    EXPECT_NEAR(b.energy[1], 0.25 * (kWc + kWh), 1e-9);
    EXPECT_NEAR(b.energy[0], -0.25 * (kWc + kWh), 1e-9);
}

TEST(DriveHamiltonian, ExpansionReversesSchedule) {
    const DriveProtocol c = drive(300e-6);
    const DriveProtocol e = drive(300e-6, Direction::expansion);
    for (double f : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
        const double t = f * c.tau;
        EXPECT_LT(max_abs(drive_hamiltonian(e, t) - drive_hamiltonian(c, c.tau - t)), 1e-9);
        const Complex2x2 h = drive_hamiltonian(c, t);
        EXPECT_TRUE(is_hermitian(h));
        EXPECT_NEAR(std::abs(h.trace()), 0.0, 1e-12);
    }
}

TEST(DriveHamiltonian, OutsideWindowThrows) {
    const DriveProtocol p = drive(1e-4);
    EXPECT_THROW(drive_hamiltonian(p, -1e-9), std::out_of_range);
    EXPECT_THROW(drive_hamiltonian(p, 2e-4), std::out_of_range);
}

TEST(DriveProtocol, Validation) {
    EXPECT_THROW(propagate(DriveProtocol{kWh, kWc, 1e-4, Direction::compression, 10}), std::invalid_argument);
    EXPECT_THROW(propagate(drive(0.0)), std::invalid_argument);
    EXPECT_THROW(propagate(drive(1e-4, Direction::compression, 0)), std::invalid_argument);
}

TEST(Propagate, SuddenQuench) {
    const PropagatorResult res = propagate(drive(1e-16, Direction::compression, 1));
    EXPECT_LT(max_abs(res.U - Complex2x2::Identity()), 1e-10);
    EXPECT_NEAR(res.xi, 0.5, 1e-10);
}

TEST(Propagate, AdiabaticLimit) {
    EXPECT_LT(propagate(drive(2e-3)).xi, 0.01);
    EXPECT_LT(propagate(drive(5e-3, Direction::compression, 8000)).xi, 0.01);
}

TEST(Propagate, TransitionProbabilityValues) {
    // regression values at the default 2000 steps
    EXPECT_NEAR(propagate(drive(50e-6)).xi, 0.4671, 1e-4);
    EXPECT_NEAR(propagate(drive(100e-6)).xi, 0.3786, 1e-4);
    EXPECT_NEAR(propagate(drive(200e-6)).xi, 0.14632, 1e-5);
    EXPECT_NEAR(propagate(drive(460e-6)).xi, 0.030368, 1e-6);
    EXPECT_NEAR(propagate(drive(1e-3)).xi, 0.0032236, 1e-7);
}

TEST(Propagate, TransitionProbabilityOscillates) {
    // inner friction: xi decays with tau but not monotonically
    std::vector<double> xi;
    for (int k = 1; k <= 120; ++k) xi.push_back(propagate(drive(k * 25e-6)).xi);
    int rises = 0;
    for (std::size_t k = 1; k < xi.size(); ++k)
        if (xi[k] > xi[k - 1] + 1e-9) ++rises;
    EXPECT_GT(rises, 0);
    EXPECT_LT(xi.back(), xi.front());
}

TEST(Propagate, SecondOrderConvergence) {
    for (double tau : {100e-6, 460e-6, 1e-3}) {
        const Complex2x2 u1 = propagate(drive(tau, Direction::compression, 500)).U;
        const Complex2x2 u2 = propagate(drive(tau, Direction::compression, 1000)).U;
        const Complex2x2 u4 = propagate(drive(tau, Direction::compression, 2000)).U;
        const double ratio = max_abs(u2 - u1) / max_abs(u4 - u2);
        EXPECT_NEAR(ratio, 4.0, 0.3) << "tau = " << tau;
    }
}

TEST(Propagate, UnitarityAndBothDirectionsShareXi) {
    for (double tau : {20e-6, 75e-6, 200e-6, 460e-6, 900e-6}) {
        const PropagatorResult c = propagate(drive(tau));
        const PropagatorResult e = propagate(drive(tau, Direction::expansion));
        EXPECT_LT(max_abs(c.U.adjoint() * c.U - Complex2x2::Identity()), 1e-10);
        EXPECT_NEAR(c.xi, e.xi, 1e-12);
        EXPECT_NEAR(c.xi, 1.0 - std::norm(c.amplitude(Level::ground, Level::ground)), 1e-12);
        EXPECT_NEAR(c.xi, std::norm(c.amplitude(Level::ground, Level::excited)), 1e-12);
        EXPECT_NEAR(std::norm(c.amplitude(Level::excited, Level::excited)), 1.0 - c.xi, 1e-12);
        // doubly stochastic transition matrix
        for (int a = 0; a < 2; ++a) {
            double row = 0, col = 0;
            for (int b = 0; b < 2; ++b) {
                row += std::norm(c.amplitude(Level(a), Level(b)));
                col += std::norm(c.amplitude(Level(b), Level(a)));
            }
            EXPECT_NEAR(row, 1.0, 1e-12);
            EXPECT_NEAR(col, 1.0, 1e-12);
        }
    }
}

TEST(TransitionProbability, IdentityExamples) {
    const EnergyBasis bz = eigenbasis(pauli::z());
    const EnergyBasis bx = eigenbasis(pauli::x());
    EXPECT_NEAR(transition_probability(PropagatorResult(Complex2x2::Identity(), bz, bz)), 0.0, 1e-15);
    EXPECT_NEAR(transition_probability(PropagatorResult(Complex2x2::Identity(), bx, bz)), 0.5, 1e-15);
}

TEST(CoherenceCoupling, VanishesForDiagonalStates) {
    const PropagatorResult res = propagate(drive(200e-6));
    const DensityMatrix d = DensityMatrix::diagonal_in(res.basis_in, 0.8, 0.2);
    EXPECT_NEAR(coherence_coupling(res, d), 0.0, 1e-15);
}

TEST(CoherenceCoupling, MatchesExplicitMatrixElements) {
    std::mt19937_64 rng(21);
    const PropagatorResult res = propagate(drive(140e-6));
    // cold basis |g> = (1,-1)/sqrt2, |e> = (1,1)/sqrt2; hot basis |g> = (0,1)
    const double s = 1.0 / std::sqrt(2.0);
    const Vector2c gc(s, -s), ec(s, s), gh(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const DensityMatrix rho = otto::testing::random_state(rng);
        const cplx ugg = gh.dot(res.U * gc);
        const cplx uge = gh.dot(res.U * ec);
        const cplx rge = gc.dot(rho.matrix() * ec);
        const double expected = -(ugg * rge * std::conj(uge)).real();
        EXPECT_NEAR(coherence_coupling(res, rho), expected, 1e-12);
    }
}

TEST(ApplyUnitary, Examples) {
    std::mt19937_64 rng(4);
    const DensityMatrix rho = otto::testing::random_state(rng);
    EXPECT_LT(max_abs(apply_unitary(rho, Complex2x2::Identity()).matrix() - rho.matrix()), 1e-15);
    const PropagatorResult res = propagate(drive(333e-6));
    const DensityMatrix out = apply_unitary(rho, res.U);
    EXPECT_NEAR(von_neumann_entropy(out), von_neumann_entropy(rho), 1e-12);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    const DensityMatrix pure = DensityMatrix::pure(Vector2c(0.6, cplx(0.0, 0.8)));
    EXPECT_NEAR(apply_unitary(pure, res.U).spectrum()[1], 1.0, 1e-10);
}

TEST(ApplyUnitary, RejectsNonUnitary) {
    Complex2x2 m;
    m << 1.0, 0.1, 0.0, 1.0;
    EXPECT_THROW(apply_unitary(DensityMatrix(), m), InvalidStateError);
}
