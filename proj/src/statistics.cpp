// statistics.cpp — Work and heat counting statistics, moments, entropy production and efficiency LDF

#include "otto/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace otto {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_closed(const CycleSnapshot& snap) {
    if (!snap.closed) throw std::invalid_argument("statistics need a closed cycle (limit cycle or assumed closure)");
}

double merge_tolerance(const CycleSnapshot& snap) { return 1e-9 * snap.config.omega_c; }

} // namespace

AtomicDistribution::AtomicDistribution(std::vector<Atom> atoms, double merge_tol) {
    for (const Atom& a : atoms) {
        auto it = std::find_if(atoms_.begin(), atoms_.end(),
                               [&](const Atom& b) { return std::abs(a.value - b.value) <= merge_tol; });
        if (it == atoms_.end())
            atoms_.push_back(a);
        else
            it->probability += a.probability;
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return x.value < y.value; });
}

double AtomicDistribution::total() const {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.probability;
    return s;
}

double AtomicDistribution::moment(int k) const {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.probability * std::pow(a.value, k);
    return s;
}

double AtomicDistribution::variance() const {
    const double m = mean();
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.probability * (a.value - m) * (a.value - m);
    return s;
}

double AtomicDistribution::weight_at(double value, double tol) const {
    for (const Atom& a : atoms_)
        if (std::abs(a.value - value) <= tol) return a.probability;
    return 0.0;
}

double JointAtomicDistribution::total() const {
    double s = 0.0;
    for (const JointAtom& a : atoms) s += a.probability;
    return s;
}

CycleParameters cycle_parameters(const CycleSnapshot& snap) {
    CycleParameters p;
    p.omega_c = snap.config.omega_c;
    p.omega_h = snap.config.omega_h;
    const EnergyBasis& bc = snap.compression.basis_in;
    const EnergyBasis& bh = snap.expansion.basis_in;
    p.p0g = population(snap.rho_t0, bc, Level::ground);
    p.p0e = population(snap.rho_t0, bc, Level::excited);
    p.p2g = population(snap.rho_t2, bh, Level::ground);
    p.p2e = population(snap.rho_t2, bh, Level::excited);
    p.xi = snap.compression.xi;
    p.zeta_ch = coherence_coupling(snap.compression, snap.rho_t0);
    p.zeta_hc = coherence_coupling(snap.expansion, snap.rho_t2);
    return p;
}

std::vector<StrokeTerm> stroke_terms(const PropagatorResult& stroke, const DensityMatrix& rho_in) {
    std::vector<StrokeTerm> out;
    out.reserve(8);
    for (int n = 0; n < 2; ++n)
        for (int n2 = 0; n2 < 2; ++n2)
            for (int m = 0; m < 2; ++m) {
                const cplx u1 = stroke.amplitude(Level(m), Level(n));
                const cplx u2 = stroke.amplitude(Level(m), Level(n2));
                const cplx rho = stroke.basis_in.element(rho_in.matrix(), Level(n), Level(n2));
                const double w = stroke.basis_out.energy[m] - 0.5 * (stroke.basis_in.energy[n] + stroke.basis_in.energy[n2]);
                out.push_back({n, n2, m, u1 * rho * std::conj(u2), w});
            }
    return out;
}

JointAtomicDistribution joint_distribution(const CycleSnapshot& snap) {
    require_closed(snap);
    const auto ch = stroke_terms(snap.compression, snap.rho_t0);
    const auto hc = stroke_terms(snap.expansion, snap.rho_t2);
    const EnergyBasis& bh = snap.compression.basis_out;
    JointAtomicDistribution joint;
    joint.merge_tol = merge_tolerance(snap);
    for (const StrokeTerm& a : ch)
        for (const StrokeTerm& b : hc) {
            const double q = bh.energy[b.in] - bh.energy[a.out];
            const double w = a.work + b.work;
            const double p = (a.weight * b.weight).real();
            auto it = std::find_if(joint.atoms.begin(), joint.atoms.end(), [&](const JointAtom& x) {
                return std::abs(x.q - q) <= joint.merge_tol && std::abs(x.w - w) <= joint.merge_tol;
            });
            if (it == joint.atoms.end())
                joint.atoms.push_back({q, w, p});
            else
                it->probability += p;
        }
    std::sort(joint.atoms.begin(), joint.atoms.end(),
              [](const JointAtom& x, const JointAtom& y) { return x.q < y.q || (x.q == y.q && x.w < y.w); });
    return joint;
}

AtomicDistribution work_distribution(const JointAtomicDistribution& joint) {
    std::vector<Atom> a;
    for (const JointAtom& j : joint.atoms) a.push_back({j.w, j.probability});
    return AtomicDistribution(std::move(a), joint.merge_tol);
}

AtomicDistribution heat_distribution(const JointAtomicDistribution& joint) {
    std::vector<Atom> a;
    for (const JointAtom& j : joint.atoms) a.push_back({j.q, j.probability});
    return AtomicDistribution(std::move(a), joint.merge_tol);
}

AtomicDistribution work_distribution_closed_form(const CycleParameters& p) {
    const double c = p.omega_c, h = p.omega_h, xi = p.xi;
    const double p0g = p.p0g, p0e = p.p0e, p2g = p.p2g, p2e = p.p2e;
    const double zc = p.zeta_ch, zh = p.zeta_hc;
    std::vector<Atom> t = {
        {0.0, p0e * p2e + p0g * p2g - 2.0 * (p0e * p2e + p0g * p2g) * xi + xi * xi},
        {-h / 2, 2 * zh * (xi - p0g)},
        {-c - h, p0e * p2e * xi * xi},
        {c, p0g * (1 - xi) * xi},
        {c - h / 2, 2 * p0g * zh * (1 - xi)},
        {-h, p2e * (1 - xi) * xi},
        {c - h, p0g * p2e * (1 - xi) * (1 - xi)},
        {-c / 2, 2 * zc * (xi - p2g)},
        {-(c + h) / 2, 4 * zc * zh},
        {c / 2, 2 * zc * (p2e - xi)},
        {(c - h) / 2, -4 * zc * zh},
        {-c / 2 - h, -2 * p2e * zc * xi},
        {c / 2 - h, 2 * p2e * zc * (xi - 1)},
        {h, p2g * (1 - xi) * xi},
        {h / 2, 2 * zh * (p0e - xi)},
        {c + h, p0g * p2g * xi * xi},
        {c + h / 2, 2 * p0g * zh * xi},
        {h - c / 2, 2 * p2g * zc * (1 - xi)},
        {(h - c) / 2, -4 * zc * zh},
        {c / 2 + h, 2 * p2g * zc * xi},
        {(c + h) / 2, 4 * zc * zh},
        {-c, p0e * (1 - xi) * xi},
        {-c - h / 2, -2 * p0e * zh * xi},
        {h - c, p0e * p2g * (1 - xi) * (1 - xi)},
        {h / 2 - c, 2 * p0e * zh * (xi - 1)},
    };
    return AtomicDistribution(std::move(t), 1e-9 * c);
}

AtomicDistribution heat_distribution_closed_form(const CycleParameters& p) {
    const double xi = p.xi;
    const double stay_g = p.p0g * (1 - xi) + p.p0e * xi - 2 * p.zeta_ch; // ends compression in |g_h>
    const double stay_e = p.p0e * (1 - xi) + p.p0g * xi + 2 * p.zeta_ch;
    std::vector<Atom> t = {
        {0.0, stay_g * p.p2g + stay_e * p.p2e},
        {p.omega_h, stay_g * p.p2e},
        {-p.omega_h, stay_e * p.p2g},
    };
    return AtomicDistribution(std::move(t), 1e-9 * p.omega_c);
}

double mean_work(const CycleParameters& p) {
    const WorkDecomposition d = work_decomposition(p);
    return -(d.dephased + d.coherent);
}

double mean_heat(const CycleParameters& p) {
    return p.omega_h * (p.n2() + p.n0() * (2 * p.xi - 1) - 2 * p.zeta_ch);
}

double second_moment_work(const CycleParameters& p) {
    const double c = p.omega_c, h = p.omega_h, xi = p.xi;
    const double mix = p.p0g * p.p2e + p.p0e * p.p2g;
    const double d0 = p.p0e - p.p0g, d2 = p.p2e - p.p2g;
    const double zc = p.zeta_ch, zh = p.zeta_hc;
    return c * c * (mix + d0 * d2 * xi - 2 * d0 * zh) + h * h * (mix + d0 * d2 * xi - 2 * d2 * zc) +
           h * c * (2 * mix * (2 * xi - 1) + 2 * d0 * d2 * xi * xi + 2 * zh * d0 + 2 * zc * d2 - 4 * zh * xi * d0 -
                    4 * zc * xi * d2 + 8 * zc * zh);
}

double work_variance(const CycleParameters& p) {
    const double c = p.omega_c, h = p.omega_h, xi = p.xi;
    const double n0 = p.n0(), n2 = p.n2();
    const double a = n0 * (1 - 2 * xi) + 2 * p.zeta_ch;
    const double b = n2 * (1 - 2 * xi) + 2 * p.zeta_hc;
    return h * h * (0.5 - n2 * n2 - a * a) + c * c * (0.5 - n0 * n0 - b * b) + c * h * (2 * n0 * a + 2 * n2 * b + 2 * xi - 1);
}

double mean_work(const CycleSnapshot& snap) {
    require_closed(snap);
    return mean_work(cycle_parameters(snap));
}

double mean_heat(const CycleSnapshot& snap) {
    require_closed(snap);
    return mean_heat(cycle_parameters(snap));
}

WorkDecomposition work_decomposition(const CycleParameters& p) {
    WorkDecomposition d;
    d.friction = 2 * p.xi * (p.omega_c * p.n2() + p.omega_h * p.n0());
    d.dephased = (p.omega_h - p.omega_c) * (p.n2() - p.n0()) + d.friction;
    d.coherent = -2 * p.omega_h * p.zeta_ch - 2 * p.omega_c * p.zeta_hc;
    return d;
}

EfficiencyResult efficiency(const CycleParameters& p) {
    const double q = mean_heat(p);
    EfficiencyResult e;
    e.engine_regime = q > 0.0;
    e.eta = q == 0.0 ? kNaN : -mean_work(p) / q;
    return e;
}

double generalized_carnot_efficiency(const CycleConfig& cfg) {
    return 1.0 - effective_inverse_temperature(cfg.hot_bath()) / cfg.beta_c;
}

bool PowerFluctuation::defined() const { return std::isfinite(relative_fluctuation); }

PowerFluctuation power_and_fluctuation(double extracted_work, double work_variance, double tau_cyc) {
    if (!(tau_cyc > 0.0)) throw std::invalid_argument("power_and_fluctuation: cycle period must be positive");
    PowerFluctuation pf;
    pf.power = extracted_work / tau_cyc;
    pf.relative_fluctuation = extracted_work > 0.0 ? std::sqrt(std::max(work_variance, 0.0)) / extracted_work : kNaN;
    return pf;
}

double entropy_production(const CycleSnapshot& snap) {
    require_closed(snap);
    const Complex2x2 hh = snap.config.hot_bath().hamiltonian();
    const Complex2x2 hc = snap.config.cold_bath().hamiltonian();
    const double qh = energy(snap.rho_t2, hh) - energy(snap.rho_t1, hh);
    const double qc = energy(snap.rho_end, hc) - energy(snap.rho_t3, hc);
    return -effective_inverse_temperature(snap.config.hot_bath()) * qh - snap.config.beta_c * qc;
}

double entropy_production_divergence(const CycleSnapshot& snap) {
    require_closed(snap);
    const DensityMatrix ss = stationary_state(snap.config.hot_bath());
    const DensityMatrix eq = stationary_state(snap.config.cold_bath());
    return (kl_divergence(snap.rho_t1, ss) - kl_divergence(snap.rho_t2, ss)) +
           (kl_divergence(snap.rho_t3, eq) - kl_divergence(snap.rho_end, eq));
}

namespace {

// ln sum_k p_k exp(-s x_k) with a max shift; NaN if the signed sum is not positive.
double signed_log_sum_exp(const std::vector<double>& x, const std::vector<double>& p, double s) {
    double m = -kInf;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (p[k] != 0.0) m = std::max(m, -s * x[k]);
    double z = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (p[k] != 0.0) z += p[k] * std::exp(-s * x[k] - m);
    if (!(z > 0.0)) return kNaN;
    return m + std::log(z);
}

} // namespace

double scgf(const JointAtomicDistribution& joint, double phi1, double phi2) {
    std::vector<double> x, p;
    for (const JointAtom& a : joint.atoms) {
        x.push_back(phi1 * a.q + phi2 * a.w);
        p.push_back(a.probability);
    }
    return signed_log_sum_exp(x, p, 1.0);
}

namespace {

// Limit of phi(s) as s -> +inf (dir = +1) or -inf (dir = -1): -inf, +inf, or a finite value.
double asymptote(const std::vector<double>& x, const std::vector<double>& p, int dir, double tol) {
    double extreme = dir > 0 ? kInf : -kInf;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (std::abs(p[k]) <= 1e-300) continue;
        extreme = dir > 0 ? std::min(extreme, x[k]) : std::max(extreme, x[k]);
    }
    double w = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (std::abs(x[k] - extreme) <= tol) w += p[k];
    if (std::abs(extreme) > tol) {
        // exponent -s*extreme grows without bound toward +inf if it has the sign of the walk
        const bool grows = (dir > 0) ? extreme < 0 : extreme > 0;
        if (grows) return w > 0 ? kInf : -kInf;
        return -kInf;
    }
    return w > 0 ? std::log(w) : -kInf;
}

} // namespace

std::vector<LdfPoint> efficiency_ldf(const JointAtomicDistribution& joint, const std::vector<double>& eta_grid) {
    // Work in the scaled variable u = s * scale so the search window is O(1).
    double scale = 0.0;
    for (const JointAtom& a : joint.atoms) scale = std::max({scale, std::abs(a.q), std::abs(a.w)});
    if (scale == 0.0) scale = 1.0;
    const double du = 0.01;
    const int half = 4000; // u in [-40, 40]
    const double xtol = joint.merge_tol > 0 ? joint.merge_tol / scale : 1e-12;

    std::vector<LdfPoint> out;
    out.reserve(eta_grid.size());
    std::vector<double> x(joint.atoms.size()), p(joint.atoms.size());
    for (double eta : eta_grid) {
        for (std::size_t k = 0; k < joint.atoms.size(); ++k) {
            x[k] = (eta * joint.atoms[k].q + joint.atoms[k].w) / scale;
            p[k] = joint.atoms[k].probability;
        }
        auto phi = [&](double u) { return signed_log_sum_exp(x, p, u); };

        LdfPoint pt{eta, 0.0, 0.0};
        double best = 0.0, best_u = 0.0;
        bool unbounded = false;
        int best_i = 0;
        for (int dir : {+1, -1}) {
            for (int i = 1; i <= half; ++i) {
                const double v = phi(dir * i * du);
                if (std::isnan(v)) { // the quasi-probability sum crosses zero: phi -> -inf
                    unbounded = true;
                    break;
                }
                if (v < best) {
                    best = v;
                    best_u = dir * i * du;
                    best_i = dir * i;
                }
            }
            if (unbounded) break;
            if (std::abs(best_i) == half && (best_i > 0) == (dir > 0)) {
                const double lim = asymptote(x, p, dir, xtol);
                if (lim == -kInf) {
                    unbounded = true;
                    break;
                }
                if (lim < best) {
                    best = lim;
                    best_u = dir * kInf;
                }
            }
        }
        if (unbounded) {
            pt.J = kInf;
            pt.s_star = kNaN;
            out.push_back(pt);
            continue;
        }
        if (std::isfinite(best_u)) {
            double a = best_u - du, b = best_u + du;
            const double g = 0.5 * (std::sqrt(5.0) - 1.0);
            double c1 = b - g * (b - a), c2 = a + g * (b - a);
            double f1 = phi(c1), f2 = phi(c2);
            while (b - a > 1e-10) {
                if (f1 < f2) {
                    b = c2;
                    c2 = c1;
                    f2 = f1;
                    c1 = b - g * (b - a);
                    f1 = phi(c1);
                } else {
                    a = c1;
                    c1 = c2;
                    f1 = f2;
                    c2 = a + g * (b - a);
                    f2 = phi(c2);
                }
            }
            const double um = 0.5 * (a + b);
            const double fm = phi(um);
            if (fm < best) {
                best = fm;
                best_u = um;
            }
        }
        pt.J = -best;
        pt.s_star = best_u / scale;
        out.push_back(pt);
    }
    return out;
}

CycleReport make_report(const CycleSnapshot& snap) {
    require_closed(snap);
    CycleReport r;
    r.params = cycle_parameters(snap);
    r.extracted_work = -mean_work(r.params);
    r.heat_hot = mean_heat(r.params);
    const Complex2x2 hc = snap.config.cold_bath().hamiltonian();
    r.heat_cold = energy(snap.rho_end, hc) - energy(snap.rho_t3, hc);
    r.decomposition = work_decomposition(r.params);
    const EfficiencyResult e = efficiency(r.params);
    r.eta_th = e.eta;
    r.engine_regime = e.engine_regime;
    r.eta_c_gen = generalized_carnot_efficiency(snap.config);
    r.work_variance = work_variance(r.params);
    r.tau_cyc = cycle_period(snap.config);
    const PowerFluctuation pf = power_and_fluctuation(r.extracted_work, r.work_variance, r.tau_cyc);
    r.power = pf.power;
    r.relative_power_fluctuation = pf.relative_fluctuation;
    r.entropy_production = entropy_production(snap);
    r.coherence_t2 = snap.coherence[2];
    r.coherence_t3 = snap.coherence[3];
    r.divergence_t2 = snap.divergence[2];
    r.closure_residual = snap.closure_residual;
    r.iterations = snap.iterations;
    return r;
}

std::vector<OracleAtom> monte_carlo_work_oracle(const CycleSnapshot& snap, std::int64_t samples, std::uint64_t seed) {
    require_closed(snap);
    if (samples < 1) throw std::invalid_argument("monte_carlo_work_oracle: need at least one sample");
    const AtomicDistribution exact = work_distribution(joint_distribution(snap));
    const double tol = merge_tolerance(snap);

    // Pairing (n, n') with (n', n) makes each stroke weight real.
    auto real_terms = [](const std::vector<StrokeTerm>& t) {
        std::vector<double> w;
        for (const StrokeTerm& s : t) w.push_back(s.weight.real());
        return w;
    };
    const auto ch = stroke_terms(snap.compression, snap.rho_t0);
    const auto hc = stroke_terms(snap.expansion, snap.rho_t2);
    const std::vector<double> a = real_terms(ch), b = real_terms(hc);

    auto cumulative = [](const std::vector<double>& w, double& norm) {
        std::vector<double> cdf(w.size());
        norm = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            norm += std::abs(w[i]);
            cdf[i] = norm;
        }
        return cdf;
    };
    double za = 0.0, zb = 0.0;
    const auto ca = cumulative(a, za), cb = cumulative(b, zb);

    // atom index of every (compression, expansion) outcome pair, and the absolute mass landing on each atom
    std::vector<int> index(a.size() * b.size(), -1);
    std::vector<double> abs_mass(exact.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double w = ch[i].work + hc[j].work;
            for (std::size_t k = 0; k < exact.size(); ++k)
                if (std::abs(exact.atoms()[k].value - w) <= tol) {
                    index[i * b.size() + j] = static_cast<int>(k);
                    abs_mass[k] += std::abs(a[i] * b[j]);
                }
        }

    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto draw = [](const std::vector<double>& cdf, double u) {
        const double target = u * cdf.back();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    };

    std::vector<double> signed_count(exact.size(), 0.0);
    for (std::int64_t s = 0; s < samples; ++s) {
        const std::size_t i = draw(ca, uniform());
        const std::size_t j = draw(cb, uniform());
        const int k = index[i * b.size() + j];
        if (k < 0) continue;
        const double sign = (a[i] < 0) != (b[j] < 0) ? -1.0 : 1.0;
        signed_count[k] += sign;
    }

    const double z = za * zb;
    const double n = static_cast<double>(samples);
    std::vector<OracleAtom> out;
    for (std::size_t k = 0; k < exact.size(); ++k) {
        OracleAtom o;
        o.value = exact.atoms()[k].value;
        o.exact = exact.atoms()[k].probability;
        o.estimate = z * signed_count[k] / n;
        // exact single-sample variance of the signed estimator: Z * |mass| - p^2
        o.std_error = std::sqrt(std::max(z * abs_mass[k] - o.exact * o.exact, 0.0) / n);
        o.z = o.std_error > 0 ? (o.estimate - o.exact) / o.std_error : (std::abs(o.estimate - o.exact) < 1e-15 ? 0.0 : kInf);
        out.push_back(o);
    }
    return out;
}

} // namespace otto
