#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "otto/bath.hpp"
#include "otto/errors.hpp"
#include "otto/protocol.hpp"
#include "otto/qubit.hpp"
#include "test_helpers.hpp"

using namespace otto;
using otto::testing::random_hermitian;
using otto::testing::random_state;

namespace {
const double kOmega = 4.0 * M_PI * 1e3;
}

TEST(Complex2x2, PauliAlgebra) {
    const cplx i(0.0, 1.0);
    EXPECT_LT(max_abs(pauli::x() * pauli::y() - i * pauli::z()), 1e-15);
    EXPECT_LT(max_abs(pauli::x() * pauli::x() - pauli::identity()), 1e-15);
    EXPECT_LT(max_abs(pauli::plus() + pauli::minus() - pauli::x()), 1e-15);
    Complex2x2 a, b, ab;
    a << 1.0, 2.0, 3.0, 4.0;
    b << cplx(0, 1), 1.0, 0.0, 2.0;
    ab << cplx(0, 1), 5.0, cplx(0, 3), 11.0;
    EXPECT_LT(max_abs(a * b - ab), 1e-15);
}

TEST(DensityMatrix, RejectsInvalidMatrices) {
    Complex2x2 m;
    m << 0.5, 0.1, 0.2, 0.5;
    EXPECT_THROW(DensityMatrix{m}, InvalidStateError);
    m << 0.6, 0.0, 0.0, 0.5;
    EXPECT_THROW(DensityMatrix{m}, InvalidStateError);
    m << 1.2, 0.0, 0.0, -0.2;
    EXPECT_THROW(DensityMatrix{m}, InvalidStateError);
    m << 0.5, 0.5, 0.5, 0.5;
    EXPECT_NO_THROW(DensityMatrix{m});
}

TEST(Eigenbasis, SigmaZ) {
    const EnergyBasis b = eigenbasis(0.5 * kOmega * pauli::z());
    EXPECT_NEAR(b.energy[0], -0.5 * kOmega, 1e-9);
    EXPECT_NEAR(b.energy[1], 0.5 * kOmega, 1e-9);
    EXPECT_LT((b.ket(Level::ground) - Vector2c(0.0, 1.0)).norm(), 1e-15);
    EXPECT_LT((b.ket(Level::excited) - Vector2c(1.0, 0.0)).norm(), 1e-15);
}

TEST(Eigenbasis, SigmaX) {
    const EnergyBasis b = eigenbasis(0.5 * kOmega * pauli::x());
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(b.energy[0], -0.5 * kOmega, 1e-9);
    EXPECT_LT((b.ket(Level::ground) - Vector2c(s, -s)).norm(), 1e-15);
    EXPECT_LT((b.ket(Level::excited) - Vector2c(s, s)).norm(), 1e-15);
}

TEST(Eigenbasis, RandomHermitianResidual) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 1000; ++k) {
        const Complex2x2 h = random_hermitian(rng);
        const EnergyBasis b = eigenbasis(h);
        EXPECT_LE(b.energy[0], b.energy[1]);
        // characteristic polynomial roots
        const double tr = h.trace().real(), det = h.determinant().real();
        const double disc = std::sqrt(std::max(tr * tr - 4 * det, 0.0));
        EXPECT_NEAR(b.energy[0], 0.5 * (tr - disc), 1e-12);
        EXPECT_NEAR(b.energy[1], 0.5 * (tr + disc), 1e-12);
        for (int l = 0; l < 2; ++l) {
            const Vector2c& v = b.vec[l];
            EXPECT_LT((h * v - b.energy[l] * v).norm(), 1e-12);
            // largest component real and positive
            const int big = std::abs(v(0)) >= std::abs(v(1)) - 1e-12 ? 0 : 1;
            EXPECT_NEAR(v(big).imag(), 0.0, 1e-15);
            EXPECT_GT(v(big).real(), 0.0);
        }
        EXPECT_LT(std::abs(b.vec[0].dot(b.vec[1])), 1e-12);
    }
}

TEST(Eigenbasis, RejectsNonHermitian) {
    Complex2x2 m;
    m << 1.0, 2.0, 0.0, 1.0;
    EXPECT_THROW(eigenbasis(m), InvalidStateError);
}

TEST(Entropy, Examples) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::pure(Vector2c(0.0, 1.0))), 0.0, 1e-15);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix()), std::log(2.0), 1e-15);
    Complex2x2 m;
    m << 0.8, 0.0, 0.0, 0.2;
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix(m)), -0.8 * std::log(0.8) - 0.2 * std::log(0.2), 1e-14);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix(m)), 0.5004, 1e-4);
}

TEST(Dephase, Examples) {
    const EnergyBasis b = eigenbasis(pauli::z());
    Complex2x2 m;
    m << 0.7, 0.0, 0.0, 0.3;
    EXPECT_LT(max_abs(dephase(DensityMatrix(m), b).matrix() - m), 1e-15);
    m << 0.5, 0.3, 0.3, 0.5;
    const DensityMatrix d = dephase(DensityMatrix(m), b);
    EXPECT_NEAR(d(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(d(0, 1)), 0.0, 1e-15);
}

TEST(Dephase, PreservesPopulationsAndIsIdempotent) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 500; ++k) {
        const DensityMatrix rho = random_state(rng);
        const EnergyBasis b = eigenbasis(random_hermitian(rng));
        const DensityMatrix d = dephase(rho, b);
        // projector sum
        Complex2x2 proj = Complex2x2::Zero();
        for (int l = 0; l < 2; ++l) {
            const Complex2x2 p = b.vec[l] * b.vec[l].adjoint();
            proj += p * rho.matrix() * p;
        }
        EXPECT_LT(max_abs(d.matrix() - proj), 1e-14);
        EXPECT_NEAR(d.matrix().trace().real(), 1.0, 1e-14);
        EXPECT_NEAR(population(d, b, Level::excited), population(rho, b, Level::excited), 1e-14);
        EXPECT_LT(max_abs(dephase(d, b).matrix() - d.matrix()), 1e-14);
        EXPECT_NEAR(relative_entropy_of_coherence(d, b), 0.0, 1e-12);
    }
}

TEST(Coherence, Examples) {
    const EnergyBasis hz = eigenbasis(kOmega * pauli::z());
    EXPECT_NEAR(relative_entropy_of_coherence(gibbs_state(kOmega * pauli::z(), 1.0 / kOmega), hz), 0.0, 1e-14);
    const Vector2c plus = (hz.ket(Level::ground) + hz.ket(Level::excited)) / std::sqrt(2.0);
    EXPECT_NEAR(relative_entropy_of_coherence(DensityMatrix::pure(plus), hz), std::log(2.0), 1e-12);
    Complex2x2 m;
    m << 0.5, 0.25, 0.25, 0.5;
    const double expected = std::log(2.0) + 0.75 * std::log(0.75) + 0.25 * std::log(0.25);
    EXPECT_NEAR(relative_entropy_of_coherence(DensityMatrix(m), hz), expected, 1e-14);
    EXPECT_NEAR(expected, 0.1308, 1e-4);
}

TEST(KlDivergence, Examples) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix rho = random_state(rng);
        EXPECT_NEAR(kl_divergence(rho, rho), 0.0, 1e-12);
    }
    Complex2x2 ref;
    ref << 0.75, 0.0, 0.0, 0.25;
    const double expected = -std::log(2.0) - 0.5 * std::log(0.75 * 0.25);
    EXPECT_NEAR(kl_divergence(DensityMatrix(), DensityMatrix(ref)), expected, 1e-14);
    EXPECT_NEAR(expected, 0.1438, 1e-4);
}

TEST(KlDivergence, SupportMismatchIsAnError) {
    const DensityMatrix ground = DensityMatrix::pure(Vector2c(0.0, 1.0));
    EXPECT_THROW(kl_divergence(DensityMatrix(), ground), DivergenceUndefinedError);
    EXPECT_NEAR(kl_divergence(ground, ground), 0.0, 1e-14);
}

TEST(KlDivergence, NonNegativeOnRandomPairs) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10000; ++k) {
        const DensityMatrix a = random_state(rng);
        const DensityMatrix b = random_state(rng);
        EXPECT_GE(kl_divergence(a, b), 0.0);
    }
}

TEST(KlDivergence, CoherenceDecomposition) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 1000; ++k) {
        const EnergyBasis b = eigenbasis(random_hermitian(rng));
        std::uniform_real_distribution<double> u(0.05, 0.95);
        const double pg = u(rng);
        const DensityMatrix ref = DensityMatrix::diagonal_in(b, pg, 1.0 - pg);
        const DensityMatrix rho = random_state(rng);
        const double lhs = kl_divergence(rho, ref);
        const double rhs = kl_divergence(dephase(rho, b), ref) + relative_entropy_of_coherence(rho, b);
        EXPECT_NEAR(lhs, rhs, 1e-10);
    }
}

TEST(Gibbs, Examples) {
    const Complex2x2 hc = 0.5 * kOmega * pauli::x();
    const EnergyBasis bc = eigenbasis(hc);
    const DensityMatrix cold = gibbs_state(hc, 2.0 / kOmega);
    EXPECT_NEAR(population(cold, bc, Level::excited), std::exp(-1.0) / (std::exp(1.0) + std::exp(-1.0)), 1e-15);
    EXPECT_NEAR(population(cold, bc, Level::excited), 0.11920, 1e-5);
    EXPECT_NEAR(mean_excitation(cold, bc), -std::tanh(1.0) / 2.0, 1e-15);
    EXPECT_NEAR(mean_excitation(cold, bc), -0.38080, 1e-5);

    const DensityMatrix frozen = gibbs_state(hc, 60.0 / kOmega);
    const Complex2x2 proj = bc.ket(Level::ground) * bc.ket(Level::ground).adjoint();
    EXPECT_LT(max_abs(frozen.matrix() - proj), 1e-15);

    EXPECT_LT(max_abs(gibbs_state(hc, 0.0).matrix() - 0.5 * Complex2x2::Identity()), 1e-15);
}

TEST(Gibbs, DetailedBalanceRatio) {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 200; ++k) {
        const Complex2x2 h = random_hermitian(rng);
        const EnergyBasis b = eigenbasis(h);
        const double beta = 0.7;
        const DensityMatrix g = gibbs_state(h, beta);
        EXPECT_NEAR(population(g, b, Level::excited) / population(g, b, Level::ground), std::exp(-beta * b.gap()), 1e-12);
        EXPECT_NEAR(relative_entropy_of_coherence(g, b), 0.0, 1e-12);
    }
}

TEST(MeanExcitation, Examples) {
    const EnergyBasis b = eigenbasis(pauli::z());
    EXPECT_NEAR(mean_excitation(DensityMatrix::pure(b.ket(Level::ground)), b), -0.5, 1e-15);
    EXPECT_NEAR(mean_excitation(DensityMatrix(), b), 0.0, 1e-15);
    const double wh = 7.2 * M_PI * 1e3;
    const BathSpec hot = BathSpec::hot(0.5 / wh, 1.0, 0.0, 1.0, wh);
    const double nss = squeezed_occupation(hot);
    const DensityMatrix ss = stationary_state(hot);
    EXPECT_NEAR(mean_excitation(ss, hot.basis()), -1.0 / (2.0 * (2.0 * nss + 1.0)), 1e-15);
    EXPECT_NEAR(mean_excitation(ss, hot.basis()), -0.03255, 1e-5);
}

TEST(TraceDistance, Basics) {
    const DensityMatrix g = DensityMatrix::pure(Vector2c(0.0, 1.0));
    const DensityMatrix e = DensityMatrix::pure(Vector2c(1.0, 0.0));
    EXPECT_NEAR(trace_distance(g, e), 1.0, 1e-15);
    EXPECT_NEAR(trace_distance(g, DensityMatrix()), 0.5, 1e-15);
}
