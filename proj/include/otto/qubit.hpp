// qubit.hpp — 2x2 operators, qubit states, entropies and coherence measures

#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace otto {

using cplx = std::complex<double>;
using Complex2x2 = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

namespace pauli {
Complex2x2 identity();
Complex2x2 x();
Complex2x2 y();
Complex2x2 z();
Complex2x2 plus();  // |0><1|, raises to the upper component
Complex2x2 minus(); // |1><0|
} // namespace pauli

enum class Level { ground = 0, excited = 1 };

// Eigenvectors of a traceless 2x2 Hamiltonian, ground first.
struct EnergyBasis {
    std::array<Vector2c, 2> vec;
    std::array<double, 2> energy{0.0, 0.0};

    const Vector2c& ket(Level l) const { return vec[static_cast<int>(l)]; }
    double eps(Level l) const { return energy[static_cast<int>(l)]; }
    double gap() const { return energy[1] - energy[0]; }

    // <a| M |b> with a, b taken from this basis
    cplx element(const Complex2x2& m, Level a, Level b) const;
    // columns are (|g>, |e>)
    Complex2x2 matrix() const;
    // M expressed in this basis, index 0 = ground
    Complex2x2 to_basis(const Complex2x2& m) const;
    Complex2x2 from_basis(const Complex2x2& m) const;
};

// Multiplies |g> and |e> by the given phases; energies untouched.
EnergyBasis rephased(const EnergyBasis& b, double phase_g, double phase_e);

class DensityMatrix {
public:
    static constexpr double kTolerance = 1e-12;

    DensityMatrix();                                  // maximally mixed
    explicit DensityMatrix(const Complex2x2& m);      // validated
    static DensityMatrix pure(const Vector2c& psi);
    static DensityMatrix diagonal_in(const EnergyBasis& b, double p_ground, double p_excited);

    const Complex2x2& matrix() const { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }

    // eigenvalues, ascending
    std::array<double, 2> spectrum() const;

private:
    Complex2x2 m_;
};

bool is_hermitian(const Complex2x2& m, double tol = 1e-12);
bool is_unitary(const Complex2x2& u, double tol = 1e-10);
double max_abs(const Complex2x2& m);

EnergyBasis eigenbasis(const Complex2x2& h);

double von_neumann_entropy(const DensityMatrix& rho);
DensityMatrix dephase(const DensityMatrix& rho, const EnergyBasis& basis);
double relative_entropy_of_coherence(const DensityMatrix& rho, const EnergyBasis& basis);
double kl_divergence(const DensityMatrix& rho, const DensityMatrix& ref);
DensityMatrix gibbs_state(const Complex2x2& h, double beta);
double mean_excitation(const DensityMatrix& rho, const EnergyBasis& basis);
double population(const DensityMatrix& rho, const EnergyBasis& basis, Level l);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double energy(const DensityMatrix& rho, const Complex2x2& h);

} // namespace otto
