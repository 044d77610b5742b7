// cycle.cpp — Four-stroke Otto cycle composition and its periodic steady state

#include "otto/cycle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "otto/errors.hpp"

namespace otto {

void CycleConfig::validate() const {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(omega_c) || !positive(omega_h) || !(omega_h > omega_c))
        throw std::invalid_argument("cycle config requires omega_h > omega_c > 0");
    if (!positive(beta_c) || !positive(beta_h)) throw std::invalid_argument("cycle config requires positive betas");
    if (!positive(gamma_c) || !positive(gamma_h)) throw std::invalid_argument("cycle config requires positive rates");
    if (!positive(tau_dri) || !positive(tau_h) || !positive(tau_c))
        throw std::invalid_argument("cycle config requires positive stroke times");
    if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(theta)) throw std::invalid_argument("cycle config: bad squeezing");
    if (drive_steps < 1) throw std::invalid_argument("cycle config: drive_steps must be >= 1");
    if (!(tolerance > 0.0)) throw std::invalid_argument("cycle config: tolerance must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("cycle config: max_iterations must be >= 1");
}

BathSpec CycleConfig::hot_bath() const { return BathSpec::hot(beta_h, r, theta, gamma_h, omega_h); }
BathSpec CycleConfig::cold_bath() const { return BathSpec::cold(beta_c, gamma_c, omega_c); }

DriveProtocol CycleConfig::drive(Direction d) const { return DriveProtocol{omega_c, omega_h, tau_dri, d, drive_steps}; }

CycleConfig reference_config() {
    CycleConfig c;
    c.omega_c = 4.0 * std::numbers::pi * 1e3;
    c.omega_h = 7.2 * std::numbers::pi * 1e3;
    c.beta_c = 2.0 / c.omega_c;
    c.beta_h = 0.5 / c.omega_h;
    c.gamma_c = 1.0;
    c.gamma_h = 1.0;
    c.tau_dri = 460e-6;
    c.tau_h = 75.15e-3;
    c.tau_c = 5.0;
    return c;
}

StrokePropagators make_propagators(const CycleConfig& cfg) {
    cfg.validate();
    return {propagate(cfg.drive(Direction::compression)), propagate(cfg.drive(Direction::expansion))};
}

CycleSnapshot run_once(const DensityMatrix& rho_start, const CycleConfig& cfg) {
    return run_once(rho_start, cfg, make_propagators(cfg));
}

CycleSnapshot run_once(const DensityMatrix& rho_start, const CycleConfig& cfg, const StrokePropagators& props) {
    cfg.validate();
    const BathSpec hot = cfg.hot_bath();
    const BathSpec cold = cfg.cold_bath();

    CycleSnapshot s;
    s.config = cfg;
    s.compression = props.compression;
    s.expansion = props.expansion;
    s.rho_t0 = rho_start;
    s.rho_t1 = apply_unitary(s.rho_t0, props.compression.U);
    s.rho_t2 = evolve_hot_analytic(s.rho_t1, hot, cfg.tau_h).end();
    if (cfg.dephase_after_hot) s.rho_t2 = dephase(s.rho_t2, hot.basis());
    s.rho_t3 = apply_unitary(s.rho_t2, props.expansion.U);
    s.rho_end = evolve_cold_analytic(s.rho_t3, cold, cfg.tau_c).end();

    const EnergyBasis bc = cold.basis();
    const EnergyBasis bh = hot.basis();
    const DensityMatrix eq = stationary_state(cold);
    const DensityMatrix ss = stationary_state(hot);
    s.coherence = {relative_entropy_of_coherence(s.rho_t0, bc), relative_entropy_of_coherence(s.rho_t1, bh),
                   relative_entropy_of_coherence(s.rho_t2, bh), relative_entropy_of_coherence(s.rho_t3, bc)};
    s.divergence = {kl_divergence(s.rho_t0, eq), kl_divergence(s.rho_t1, ss), kl_divergence(s.rho_t2, ss),
                    kl_divergence(s.rho_t3, eq)};
    s.iterations = 1;
    s.closure_residual = trace_distance(s.rho_end, s.rho_t0);
    return s;
}

CycleSnapshot find_limit_cycle(const CycleConfig& cfg) {
    cfg.validate();
    return find_limit_cycle(cfg, gibbs_state(cold_hamiltonian(cfg.omega_c), cfg.beta_c));
}

CycleSnapshot find_limit_cycle(const CycleConfig& cfg, const DensityMatrix& seed) {
    const StrokePropagators props = make_propagators(cfg);
    if (cfg.mode == ClosureMode::assumed_closure) {
        CycleSnapshot s = run_once(seed, cfg, props);
        s.closed = true;
        return s;
    }
    DensityMatrix rho = seed;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        CycleSnapshot s = run_once(rho, cfg, props);
        if (s.closure_residual < cfg.tolerance) {
            s.iterations = it;
            s.closed = true;
            return s;
        }
        rho = s.rho_end;
    }
    std::ostringstream os;
    os << "limit cycle did not converge within " << cfg.max_iterations << " iterations";
    throw NonConvergenceError(os.str());
}

double cycle_period(const CycleConfig& cfg) { return cfg.tau_h + cfg.tau_c + 2.0 * cfg.tau_dri; }

} // namespace otto
