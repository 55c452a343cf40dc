#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsb/tabular.hpp"

namespace lsb {

// Skill solvers used by the exact verification machinery. `Exact` returns
// the greedy optimal skill policy (eta = 0 up to the linear solver); `Soft`
// returns a Boltzmann policy over the optimal Q, a deliberately suboptimal
// learner with exactly measurable eta; `Uniform` never improves.
struct OracleLearner {
    enum class Kind { Exact, Soft, Uniform };
    Kind kind = Kind::Exact;
    double tau = 0.05;

    static OracleLearner exact() { return {Kind::Exact, 0.0}; }
    static OracleLearner soft(double tau) { return {Kind::Soft, tau}; }
    static OracleLearner uniform() { return {Kind::Uniform, 0.0}; }
    std::string name() const;
};

struct OracleUpdate {
    TabularPolicy policy_full; // skill policy rows at the class states
    double eta = 0.0;          // Def. 4 error of this update, exact
};

// One Alg.-1 skill update of class i against exit values V.
OracleUpdate oracle_skill_update(const TabularInstance& inst, int class_index,
                                 const std::vector<double>& exit_values,
                                 const OracleLearner& learner);

struct Lemma1Report {
    double eta = 0.0;
    double eq5_worst_margin = 0.0;     // max_s (lhs - rhs), <= tol when holding
    double eq6_in_worst_margin = 0.0;  // over s in P_i
    double eq6_out_worst_margin = 0.0; // over s outside P_i
    bool holds = false;
};

// Checks Eq. 5 and the two-case Eq. 6 for a single exact skill update of
// class i starting from the given skill set.
Lemma1Report verify_lemma1(const TabularInstance& inst, const TabularSkillSet& sigma,
                           int class_index, const OracleLearner& learner, double tol = 1e-9);

struct SweepRecord {
    double gap = 0.0;       // sup gap after the sweep
    double eta_sweep = 0.0; // max per-update eta within the sweep
    double bound = 0.0;     // gamma * previous gap + m * eta / (1 - gamma)
    bool holds = false;
};

struct Lemma2Report {
    double initial_gap = 0.0;
    std::vector<SweepRecord> sweeps;
    bool holds = false;
};

// Runs full sweeps from uniform skills and asserts the per-sweep contraction
// gap_{k+1} <= gamma * gap_k + m * eta / (1 - gamma) + tol.
Lemma2Report verify_lemma2(const TabularInstance& inst, const OracleLearner& learner,
                           int sweeps, double tol = 1e-9);

struct BoundReport {
    double lhs = 0.0;       // sup gap after K sweeps
    double rhs = 0.0;       // m * (eta_p + nu) / (1-gamma)^2 + epsilon
    double eta_p = 0.0;     // max eta over all K*m updates
    int iterations = 0;     // K = min_iterations(epsilon, gamma)
    bool holds = false;
    std::vector<double> gap_trace; // gap after each sweep
};

// Theorem 1: K = min_iterations(epsilon, gamma) sweeps from uniform skills;
// nu is an optional policy-evaluation error added to eta_p.
BoundReport verify_theorem1(const TabularInstance& inst, const OracleLearner& learner,
                            double epsilon, double nu = 0.0, double tol = 1e-9);

} // namespace lsb
