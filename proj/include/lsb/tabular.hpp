#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lsb/mdp.hpp"
#include "lsb/partition.hpp"
#include "lsb/rng.hpp"

namespace lsb {

// Exact finite MDP. P[a] is an n x n row-stochastic matrix, R is n x |A| with
// entries in [0, 1]. Termination is modelled with absorbing zero-reward
// states, so the instance is continuing by construction.
struct TabularInstance {
    int n_states = 0;
    int n_actions = 0;
    std::vector<std::vector<std::vector<double>>> P; // [a][s][s']
    std::vector<std::vector<double>> R;              // [s][a]
    double gamma = 0.9;
    std::vector<int> partition_labels;

    int num_classes() const;
    std::vector<int> class_members(int i) const;
    void validate() const;
};

// Deterministic per-state policy matrices: rows are action distributions.
using TabularPolicy = std::vector<std::vector<double>>;

TabularPolicy uniform_tabular_policy(int n_states, int n_actions);

struct ValueIterationResult {
    std::vector<double> V;
    std::vector<std::vector<double>> Q; // [s][a]
    std::vector<int> greedy;            // argmax_a Q, lowest index on ties
};

// Value iteration warm start followed by policy-iteration polish, so V* and
// Q* are exact up to the linear solver.
ValueIterationResult value_iteration(const TabularInstance& inst, double tol = 1e-10);

// Solves (I - gamma P^pi) V = R^pi directly.
std::vector<double> evaluate_flat_policy_exact(const TabularInstance& inst,
                                               const TabularPolicy& policy);

// One skill (tabular policy) per class; rows outside the class are unused.
struct TabularSkillSet {
    std::vector<TabularPolicy> policies; // [class][s][a]
};

TabularSkillSet uniform_tabular_skill_set(const TabularInstance& inst);

// Flat policy pi(s) = policies[label(s)](s).
TabularPolicy flatten_tabular_skills(const TabularInstance& inst, const TabularSkillSet& skills);

// Skill-level evaluation route: per class, solve the absorbing chain for the
// within-skill discounted rewards and the discounted exit kernel, then solve
// the skill-level fixed point. Algebraically independent of the flat route.
std::vector<double> evaluate_skill_composition_exact(const TabularInstance& inst,
                                                     const TabularSkillSet& skills);

// Exact Def.-3 Skill MDP for class i built around exit values V_M: class
// states first, terminal s_T last.
struct TabularSkillMdp {
    std::vector<int> members;      // target-MDP indices of class states
    int n_states = 0;              // members.size() + 1, terminal last
    int n_actions = 0;
    std::vector<std::vector<std::vector<double>>> P;
    std::vector<std::vector<double>> R;
    double gamma = 0.9;

    TabularInstance as_instance() const;
};

TabularSkillMdp build_exact_skill_mdp(const TabularInstance& inst, int class_index,
                                      const std::vector<double>& exit_values);

struct SkillMdpSolution {
    TabularPolicy policy;     // over skill-MDP states (terminal row uniform)
    std::vector<double> V;    // optimal values over skill-MDP states
};

SkillMdpSolution solve_skill_mdp_exact(const TabularInstance& inst, int class_index,
                                       const std::vector<double>& exit_values);

// Exact value of a class policy inside a skill MDP (terminal worth 0).
std::vector<double> evaluate_policy_in_skill_mdp(const TabularSkillMdp& mdp,
                                                 const TabularPolicy& class_policy);

// Def. 4: eta_i = max_{s in P_i} (V*_{M_i'}(s) - V^{pi}_{M_i'}(s)); the class
// policy is read from skills.policies[i] at the class states.
struct EtaReport {
    double eta_p = 0.0;
    std::vector<double> per_class;
};

EtaReport measure_eta(const TabularInstance& inst, const TabularSkillSet& skills,
                      const std::vector<double>& exit_values);

// Random instance generator: Dirichlet(1) rows, Uniform[0,1] rewards, and a
// balanced random partition into m classes.
TabularInstance random_instance(int n_states, int n_actions, int m, double gamma, Rng& rng);

// s0 -> s1 -> goal chain: action 1 moves right (reward 1 entering the goal),
// action 0 moves left/stays; the goal is absorbing with reward 0.
TabularInstance chain_instance(double gamma = 0.5);

// Generative embedding of a tabular instance: state index s is the point
// (s + 0.5), bounds [0, n]. Absorbing zero-reward states raise `done` so the
// sampled pipeline terminates where the exact one discounts zeros.
class TabularEnv : public EnvModel {
public:
    explicit TabularEnv(TabularInstance inst, std::vector<double> start_dist = {});

    std::size_t state_dim() const override { return 1; }
    int action_count() const override { return inst_.n_actions; }
    double gamma() const override { return inst_.gamma; }
    const StateBounds& bounds() const override { return bounds_; }

    StepResult step(const State& s, int action, Rng& rng) const override;
    State initial_state(Rng& rng) const override;
    State sample_state_in_box(const State& lo, const State& hi, Rng& rng) const override;

    int state_index(const State& s) const;
    State state_point(int idx) const;
    const TabularInstance& instance() const { return inst_; }

private:
    TabularInstance inst_;
    StateBounds bounds_;
    std::vector<double> start_dist_;
    std::vector<bool> absorbing_zero_;
};

} // namespace lsb
