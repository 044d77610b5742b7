// statistics.hpp — Work and heat counting statistics, moments, entropy production and efficiency LDF

#pragma once

#include <cstdint>
#include <vector>

#include "otto/cycle.hpp"

namespace otto {

struct Atom {
    double value{0.0};
    double probability{0.0};
};

// Weighted delta comb, sorted by value. Weights are quasi-probabilities: the
// coherence-driven atoms may be negative, the total is one.
class AtomicDistribution {
public:
    AtomicDistribution() = default;
    // Sorts and merges atoms closer than merge_tol.
    AtomicDistribution(std::vector<Atom> atoms, double merge_tol);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double total() const;
    double moment(int k) const;
    double mean() const { return moment(1); }
    double variance() const;
    // Weight of the atom within tol of value, 0 if absent.
    double weight_at(double value, double tol) const;

private:
    std::vector<Atom> atoms_;
};

struct JointAtom {
    double q{0.0}; // heat from the hot bath
    double w{0.0}; // total work on the system
    double probability{0.0};
};

struct JointAtomicDistribution {
    std::vector<JointAtom> atoms;
    double merge_tol{0.0};

    double total() const;
};

// Populations, transition probability and coherence couplings of a cycle.
struct CycleParameters {
    double omega_c{0.0}, omega_h{0.0};
    double p0g{0.0}, p0e{0.0}; // rho_t0 in the H_c basis
    double p2g{0.0}, p2e{0.0}; // rho_t2 in the H_h basis
    double xi{0.0};
    double zeta_ch{0.0}, zeta_hc{0.0};

    double n0() const { return 0.5 * (p0e - p0g); }
    double n2() const { return 0.5 * (p2e - p2g); }
};

CycleParameters cycle_parameters(const CycleSnapshot& snap);

// One stroke of the two-point scheme: the weight of outcome pair (in, in2) -> out,
// U^{out,in} rho_{in,in2} conj(U^{out,in2}), and its work eps_out - (eps_in + eps_in2)/2.
struct StrokeTerm {
    int in{0}, in2{0}, out{0};
    cplx weight;
    double work{0.0};
};
std::vector<StrokeTerm> stroke_terms(const PropagatorResult& stroke, const DensityMatrix& rho_in);

JointAtomicDistribution joint_distribution(const CycleSnapshot& snap);
AtomicDistribution work_distribution(const JointAtomicDistribution& joint);
AtomicDistribution heat_distribution(const JointAtomicDistribution& joint);

// Closed-form distributions and moments in terms of CycleParameters.
AtomicDistribution work_distribution_closed_form(const CycleParameters& p);
AtomicDistribution heat_distribution_closed_form(const CycleParameters& p);
double mean_work(const CycleParameters& p); // <w_tot>, negative for an engine
double mean_heat(const CycleParameters& p); // <q_h>
double second_moment_work(const CycleParameters& p);
double work_variance(const CycleParameters& p);
double mean_work(const CycleSnapshot& snap);
double mean_heat(const CycleSnapshot& snap);

struct WorkDecomposition {
    double dephased{0.0};
    double coherent{0.0};
    double friction{0.0};
};
WorkDecomposition work_decomposition(const CycleParameters& p);

struct EfficiencyResult {
    double eta{0.0};            // NaN when <q_h> = 0
    bool engine_regime{false};  // <q_h> > 0
};
EfficiencyResult efficiency(const CycleParameters& p);
double generalized_carnot_efficiency(const CycleConfig& cfg);

struct PowerFluctuation {
    double power{0.0};                // extracted work per second
    double relative_fluctuation{0.0}; // NaN when the extracted work is not positive
    bool defined() const;
};
PowerFluctuation power_and_fluctuation(double extracted_work, double work_variance, double tau_cyc);

// -beta_eff <q_h> - beta_c <q_c>, heats from state energy differences.
double entropy_production(const CycleSnapshot& snap);
// Sum of relative-entropy drops toward each bath's stationary state.
double entropy_production_divergence(const CycleSnapshot& snap);

// ln sum p exp(-phi1 q - phi2 w); NaN when the quasi-probability sum is not positive.
double scgf(const JointAtomicDistribution& joint, double phi1, double phi2);

struct LdfPoint {
    double eta{0.0};
    double J{0.0};        // +inf when phi(s eta, s) is unbounded below
    double s_star{0.0};   // minimiser, NaN when J is infinite
};
std::vector<LdfPoint> efficiency_ldf(const JointAtomicDistribution& joint, const std::vector<double>& eta_grid);

struct CycleReport {
    double extracted_work{0.0}; // -<w_tot>
    double heat_hot{0.0};
    double heat_cold{0.0};
    WorkDecomposition decomposition;
    double eta_th{0.0};
    bool engine_regime{false};
    double eta_c_gen{0.0};
    double power{0.0};
    double relative_power_fluctuation{0.0};
    double work_variance{0.0};
    double entropy_production{0.0};
    double coherence_t2{0.0}, coherence_t3{0.0};
    double divergence_t2{0.0};
    double tau_cyc{0.0};
    CycleParameters params;
    double closure_residual{0.0};
    int iterations{0};
};
CycleReport make_report(const CycleSnapshot& snap);

// Signed two-point-measurement sampler for p(w): stroke outcomes are drawn with
// probability proportional to |weight| and carry the weight's sign.
struct OracleAtom {
    double value{0.0};
    double exact{0.0};
    double estimate{0.0};
    double std_error{0.0};
    double z{0.0};
};
std::vector<OracleAtom> monte_carlo_work_oracle(const CycleSnapshot& snap, std::int64_t samples, std::uint64_t seed);

} // namespace otto
