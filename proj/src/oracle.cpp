#include "lsb/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "lsb/lsb_driver.hpp"

namespace lsb {

std::string OracleLearner::name() const {
    switch (kind) {
    case Kind::Exact: return "exact";
    case Kind::Soft: return "soft";
    case Kind::Uniform: return "uniform";
    }
    return "?";
}

OracleUpdate oracle_skill_update(const TabularInstance& inst, int class_index,
                                 const std::vector<double>& exit_values,
                                 const OracleLearner& learner) {
    SkillMdpSolution sol = solve_skill_mdp_exact(inst, class_index, exit_values);
    OracleUpdate out;
    switch (learner.kind) {
    case OracleLearner::Kind::Exact:
        out.policy_full = sol.policy_full;
        break;
    case OracleLearner::Kind::Soft: {
        // Boltzmann over the exact optimal Q of the skill MDP.
        ValueIterationResult vi = value_iteration(sol.mdp.as_instance(), 1e-12);
        out.policy_full = uniform_tabular_policy(inst.n_states, inst.n_actions);
        for (std::size_t u = 0; u < sol.mdp.members.size(); ++u) {
            const auto& q = vi.Q[u];
            double mx = *std::max_element(q.begin(), q.end());
            std::vector<double> row(inst.n_actions);
            double total = 0.0;
            for (int a = 0; a < inst.n_actions; ++a) {
                row[a] = std::exp((q[a] - mx) / learner.tau);
                total += row[a];
            }
            for (double& p : row) p /= total;
            out.policy_full[sol.mdp.members[u]] = row;
        }
        break;
    }
    case OracleLearner::Kind::Uniform:
        out.policy_full = uniform_tabular_policy(inst.n_states, inst.n_actions);
        break;
    }
    std::vector<double> v_pol = evaluate_policy_in_skill_mdp(sol.mdp, out.policy_full);
    for (std::size_t u = 0; u < sol.v_class.size(); ++u)
        out.eta = std::max(out.eta, sol.v_class[u] - v_pol[u]);
    return out;
}

Lemma1Report verify_lemma1(const TabularInstance& inst, const TabularSkillSet& sigma,
                           int class_index, const OracleLearner& learner, double tol) {
    const double g = inst.gamma;
    std::vector<double> v_star = value_iteration(inst, 1e-12).V;
    std::vector<double> v_pre = evaluate_flat_policy_exact(inst, flatten_tabular_skills(inst, sigma));
    OracleUpdate upd = oracle_skill_update(inst, class_index, v_pre, learner);
    TabularSkillSet sigma_next = sigma;
    sigma_next.policies[class_index] = upd.policy_full;
    std::vector<double> v_post =
        evaluate_flat_policy_exact(inst, flatten_tabular_skills(inst, sigma_next));

    double gap_pre = sup_gap(v_star, v_pre).sup_gap;
    double slack = upd.eta / (1.0 - g);

    Lemma1Report rep;
    rep.eta = upd.eta;
    rep.eq5_worst_margin = -1e300;
    rep.eq6_in_worst_margin = -1e300;
    rep.eq6_out_worst_margin = -1e300;
    for (int s = 0; s < inst.n_states; ++s) {
        rep.eq5_worst_margin =
            std::max(rep.eq5_worst_margin, (v_pre[s] - v_post[s]) - slack);
        double lhs = v_star[s] - v_post[s];
        if (inst.partition_labels[s] == class_index)
            rep.eq6_in_worst_margin =
                std::max(rep.eq6_in_worst_margin, lhs - (g * gap_pre + slack));
        else
            rep.eq6_out_worst_margin = std::max(rep.eq6_out_worst_margin, lhs - (gap_pre + slack));
    }
    if (inst.class_members(class_index).size() == static_cast<std::size_t>(inst.n_states))
        rep.eq6_out_worst_margin = 0.0; // no outside states
    rep.holds = rep.eq5_worst_margin <= tol && rep.eq6_in_worst_margin <= tol &&
                rep.eq6_out_worst_margin <= tol;
    return rep;
}

namespace {

struct SweepState {
    TabularSkillSet sigma;
    std::vector<double> v_star;
    double gap = 0.0;
};

SweepState init_sweep_state(const TabularInstance& inst) {
    SweepState st;
    st.sigma = uniform_tabular_skill_set(inst);
    st.v_star = value_iteration(inst, 1e-12).V;
    std::vector<double> v =
        evaluate_flat_policy_exact(inst, flatten_tabular_skills(inst, st.sigma));
    st.gap = sup_gap(st.v_star, v).sup_gap;
    return st;
}

// One full sweep (one update per skill, re-evaluating before each update).
// Returns the max per-update eta.
double run_sweep(const TabularInstance& inst, const OracleLearner& learner, SweepState& st) {
    double eta_max = 0.0;
    const int m = inst.num_classes();
    for (int i = 0; i < m; ++i) {
        if (inst.class_members(i).empty()) continue;
        std::vector<double> v =
            evaluate_flat_policy_exact(inst, flatten_tabular_skills(inst, st.sigma));
        OracleUpdate upd = oracle_skill_update(inst, i, v, learner);
        st.sigma.policies[i] = upd.policy_full;
        eta_max = std::max(eta_max, upd.eta);
    }
    std::vector<double> v =
        evaluate_flat_policy_exact(inst, flatten_tabular_skills(inst, st.sigma));
    st.gap = sup_gap(st.v_star, v).sup_gap;
    return eta_max;
}

} // namespace

Lemma2Report verify_lemma2(const TabularInstance& inst, const OracleLearner& learner,
                           int sweeps, double tol) {
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
    const int m = inst.num_classes();
    const double g = inst.gamma;
    SweepState st = init_sweep_state(inst);
    Lemma2Report rep;
    rep.initial_gap = st.gap;
    rep.holds = true;
    double prev_gap = st.gap;
    for (int k = 0; k < sweeps; ++k) {
        SweepRecord rec;
        rec.eta_sweep = run_sweep(inst, learner, st);
        rec.gap = st.gap;
        rec.bound = g * prev_gap + m * rec.eta_sweep / (1.0 - g);
        rec.holds = rec.gap <= rec.bound + tol;
        rep.holds = rep.holds && rec.holds;
        rep.sweeps.push_back(rec);
        prev_gap = rec.gap;
    }
    return rep;
}

BoundReport verify_theorem1(const TabularInstance& inst, const OracleLearner& learner,
                            double epsilon, double nu, double tol) {
    const int m = inst.num_classes();
    const double g = inst.gamma;
    BoundReport rep;
    rep.iterations = min_iterations(epsilon, g);
    SweepState st = init_sweep_state(inst);
    for (int k = 0; k < rep.iterations; ++k) {
        double eta = run_sweep(inst, learner, st);
        rep.eta_p = std::max(rep.eta_p, eta);
        rep.gap_trace.push_back(st.gap);
    }
    rep.lhs = st.gap;
    rep.rhs = m * (rep.eta_p + nu) / ((1.0 - g) * (1.0 - g)) + epsilon;
    rep.holds = rep.lhs <= rep.rhs + tol;
    return rep;
}

} // namespace lsb
