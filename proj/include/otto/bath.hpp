// bath.hpp — Squeezed and thermal isochores: occupations, analytic and numeric evolution

#pragma once

#include <vector>

#include "otto/qubit.hpp"

namespace otto {

enum class BathKind { hot_squeezed, cold_thermal };

struct BathSpec {
    double beta{1.0};  // 1/(hbar rad/s)
    double r{0.0};
    double theta{0.0}; // squeezing phase, rad
    double gamma{1.0}; // 1/s
    double omega{1.0}; // system frequency during the contact, rad/s
    BathKind kind{BathKind::hot_squeezed};

    static BathSpec hot(double beta, double r, double theta, double gamma, double omega);
    static BathSpec cold(double beta, double gamma, double omega);

    void validate() const;

    // H_h = (w/2) sigma_z for the hot contact, H_c = (w/2) sigma_x for the cold one
    Complex2x2 hamiltonian() const;
    EnergyBasis basis() const;
    // M = -(1/2) sinh(2r) e^{i theta} (2N_th + 1)
    cplx m_coefficient() const;
};

struct IsochoreSolution {
    std::vector<double> times;
    std::vector<DensityMatrix> states;

    const DensityMatrix& start() const { return states.front(); }
    const DensityMatrix& end() const { return states.back(); }
};

double thermal_occupation(const BathSpec& spec);
double squeezed_occupation(const BathSpec& spec);
double effective_inverse_temperature(const BathSpec& spec);
double relaxation_time(const BathSpec& spec);
DensityMatrix stationary_state(const BathSpec& spec);

// Closed-form evolution sampled at `samples` equally spaced times in [0, tau] (samples >= 2).
IsochoreSolution evolve_hot_analytic(const DensityMatrix& rho_in, const BathSpec& spec, double tau, int samples = 2);
IsochoreSolution evolve_cold_analytic(const DensityMatrix& rho_in, const BathSpec& spec, double tau, int samples = 2);

// Single point of the closed-form solution at time t.
DensityMatrix isochore_state(const DensityMatrix& rho_in, const BathSpec& spec, double t);

// Right-hand side of the Schrodinger-picture master equation at time t after contact starts.
Complex2x2 master_equation_rhs(const Complex2x2& rho, const BathSpec& spec, double t);

// Fixed-step RK4 integration; samples are taken at step indices round(k*steps/(samples-1)).
IsochoreSolution evolve_numeric(const DensityMatrix& rho_in, const BathSpec& spec, double tau, int steps,
                                int samples = 2);

} // namespace otto
