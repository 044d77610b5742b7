// cycle.hpp — Four-stroke Otto cycle composition and its periodic steady state

#pragma once

#include "otto/bath.hpp"
#include "otto/protocol.hpp"

namespace otto {

enum class ClosureMode {
    limit_cycle,     // iterate the cycle map to its fixed point
    assumed_closure, // single pass seeded with the cold Gibbs state
};

struct CycleConfig {
    double omega_c{0.0}, omega_h{0.0}; // rad/s
    double beta_c{0.0}, beta_h{0.0};   // 1/(hbar rad/s)
    double r{0.0}, theta{0.0};
    double gamma_c{1.0}, gamma_h{1.0}; // 1/s
    double tau_dri{0.0}, tau_h{0.0}, tau_c{0.0}; // s
    bool dephase_after_hot{false};
    int drive_steps{2000};
    double tolerance{1e-12};
    int max_iterations{10000};
    ClosureMode mode{ClosureMode::limit_cycle};

    void validate() const;

    BathSpec hot_bath() const;
    BathSpec cold_bath() const;
    DriveProtocol drive(Direction d) const;
};

// Reference parameters: w_c = 4 pi krad/s, w_h = 7.2 pi krad/s, beta_c w_c = 2, beta_h w_h = 1/2,
// gamma = 1/s, tau_dri = 460 us, tau_h = 75.15 ms, tau_c = 5 s, r = 0.
CycleConfig reference_config();

struct CycleSnapshot {
    CycleConfig config;
    DensityMatrix rho_t0, rho_t1, rho_t2, rho_t3, rho_end;
    PropagatorResult compression, expansion;
    // coherence and divergence to the stroke asymptote, indexed t0, t1, t2, t3
    std::array<double, 4> coherence{};
    std::array<double, 4> divergence{};
    int iterations{0};
    double closure_residual{0.0};
    bool closed{false}; // true for a converged limit cycle or an assumed-closure pass
};

// Propagators depend only on (w_c, w_h, tau_dri, steps); callers may reuse them.
struct StrokePropagators {
    PropagatorResult compression, expansion;
};
StrokePropagators make_propagators(const CycleConfig& cfg);

CycleSnapshot run_once(const DensityMatrix& rho_start, const CycleConfig& cfg);
CycleSnapshot run_once(const DensityMatrix& rho_start, const CycleConfig& cfg, const StrokePropagators& props);

// Follows cfg.mode; limit_cycle iterates from the cold Gibbs state.
CycleSnapshot find_limit_cycle(const CycleConfig& cfg);
CycleSnapshot find_limit_cycle(const CycleConfig& cfg, const DensityMatrix& seed);

double cycle_period(const CycleConfig& cfg);

} // namespace otto
