#include "lsb/tabular.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lsb {

namespace {

Eigen::MatrixXd policy_transition(const TabularInstance& inst, const TabularPolicy& policy) {
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(inst.n_states, inst.n_states);
    for (int s = 0; s < inst.n_states; ++s)
        for (int a = 0; a < inst.n_actions; ++a) {
            double pa = policy[s][a];
            if (pa == 0.0) continue;
            for (int y = 0; y < inst.n_states; ++y) P(s, y) += pa * inst.P[a][s][y];
        }
    return P;
}

Eigen::VectorXd policy_reward(const TabularInstance& inst, const TabularPolicy& policy) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(inst.n_states);
    for (int s = 0; s < inst.n_states; ++s)
        for (int a = 0; a < inst.n_actions; ++a) r(s) += policy[s][a] * inst.R[s][a];
    return r;
}

std::vector<double> solve_policy_values(const TabularInstance& inst, const TabularPolicy& policy) {
    Eigen::MatrixXd A =
        Eigen::MatrixXd::Identity(inst.n_states, inst.n_states) - inst.gamma * policy_transition(inst, policy);
    Eigen::VectorXd v = A.partialPivLu().solve(policy_reward(inst, policy));
    return std::vector<double>(v.data(), v.data() + inst.n_states);
}

} // namespace

int TabularInstance::num_classes() const {
    int m = 0;
    for (int l : partition_labels) m = std::max(m, l + 1);
    return m;
}

std::vector<int> TabularInstance::class_members(int i) const {
    std::vector<int> out;
    for (int s = 0; s < n_states; ++s)
        if (partition_labels[s] == i) out.push_back(s);
    return out;
}

void TabularInstance::validate() const {
    if (n_states < 1 || n_actions < 1) throw std::invalid_argument("empty instance");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must be in [0,1)");
    for (int a = 0; a < n_actions; ++a)
        for (int s = 0; s < n_states; ++s) {
            double sum = std::accumulate(P[a][s].begin(), P[a][s].end(), 0.0);
            if (std::abs(sum - 1.0) > 1e-12)
                throw std::invalid_argument("transition row does not sum to 1");
        }
    for (int s = 0; s < n_states; ++s)
        for (int a = 0; a < n_actions; ++a)
            if (R[s][a] < 0.0 || R[s][a] > 1.0)
                throw std::invalid_argument("reward outside [0,1]");
    if (!partition_labels.empty() && static_cast<int>(partition_labels.size()) != n_states)
        throw std::invalid_argument("label count mismatch");
}

TabularPolicy uniform_tabular_policy(int n_states, int n_actions) {
    return TabularPolicy(n_states, std::vector<double>(n_actions, 1.0 / n_actions));
}

ValueIterationResult value_iteration(const TabularInstance& inst, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    const int n = inst.n_states, A = inst.n_actions;
    std::vector<double> V(n, 0.0), Vnew(n, 0.0);
    const double g = inst.gamma;
    // residual threshold tol*(1-g)/g converts to a value error below tol
    const double thresh = g > 0.0 ? tol * (1.0 - g) / g : tol;
    for (int iter = 0; iter < 1000000; ++iter) {
        double resid = 0.0;
        for (int s = 0; s < n; ++s) {
            double best = -1e300;
            for (int a = 0; a < A; ++a) {
                double q = inst.R[s][a];
                const auto& row = inst.P[a][s];
                double acc = 0.0;
                for (int y = 0; y < n; ++y) acc += row[y] * V[y];
                q += g * acc;
                if (q > best) best = q;
            }
            Vnew[s] = best;
            resid = std::max(resid, std::abs(best - V[s]));
        }
        V.swap(Vnew);
        if (resid < thresh) break;
    }
    // Policy-iteration polish: greedy extraction + exact evaluation until the
    // greedy policy is stable, which pins V* to linear-solver accuracy.
    std::vector<int> greedy(n, 0);
    for (int round = 0; round < 64; ++round) {
        std::vector<int> next_greedy(n, 0);
        for (int s = 0; s < n; ++s) {
            double best = -1e300;
            int best_a = 0;
            for (int a = 0; a < A; ++a) {
                double q = inst.R[s][a];
                const auto& row = inst.P[a][s];
                double acc = 0.0;
                for (int y = 0; y < n; ++y) acc += row[y] * V[y];
                q += g * acc;
                if (q > best + 1e-13) {
                    best = q;
                    best_a = a;
                }
            }
            next_greedy[s] = best_a;
        }
        TabularPolicy pol(n, std::vector<double>(A, 0.0));
        for (int s = 0; s < n; ++s) pol[s][next_greedy[s]] = 1.0;
        std::vector<double> Vpol = solve_policy_values(inst, pol);
        bool stable = (round > 0 && next_greedy == greedy);
        greedy = next_greedy;
        V = Vpol;
        if (stable) break;
    }
    ValueIterationResult res;
    res.V = V;
    res.greedy = greedy;
    res.Q.assign(n, std::vector<double>(A, 0.0));
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < A; ++a) {
            double q = inst.R[s][a];
            const auto& row = inst.P[a][s];
            double acc = 0.0;
            for (int y = 0; y < n; ++y) acc += row[y] * V[y];
            res.Q[s][a] = q + g * acc;
        }
    return res;
}

std::vector<double> evaluate_flat_policy_exact(const TabularInstance& inst,
                                               const TabularPolicy& policy) {
    for (const auto& row : policy) {
        double sum = std::accumulate(row.begin(), row.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("policy row is not a distribution");
    }
    return solve_policy_values(inst, policy);
}

TabularSkillSet uniform_tabular_skill_set(const TabularInstance& inst) {
    TabularSkillSet set;
    set.policies.assign(inst.num_classes(),
                        uniform_tabular_policy(inst.n_states, inst.n_actions));
    return set;
}

TabularPolicy flatten_tabular_skills(const TabularInstance& inst, const TabularSkillSet& skills) {
    TabularPolicy flat(inst.n_states);
    for (int s = 0; s < inst.n_states; ++s)
        flat[s] = skills.policies[inst.partition_labels[s]][s];
    return flat;
}

std::vector<double> evaluate_skill_composition_exact(const TabularInstance& inst,
                                                     const TabularSkillSet& skills) {
    const int n = inst.n_states;
    const double g = inst.gamma;
    // Per-state within-skill reward and discounted exit kernel.
    Eigen::VectorXd rtilde = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    const int m = inst.num_classes();
    for (int i = 0; i < m; ++i) {
        std::vector<int> members = inst.class_members(i);
        if (members.empty()) continue;
        const int c = static_cast<int>(members.size());
        const TabularPolicy& pol = skills.policies[i];
        Eigen::MatrixXd Qin = Eigen::MatrixXd::Zero(c, c);
        Eigen::MatrixXd Eout = Eigen::MatrixXd::Zero(c, n);
        Eigen::VectorXd rc = Eigen::VectorXd::Zero(c);
        for (int u = 0; u < c; ++u) {
            int s = members[u];
            for (int a = 0; a < inst.n_actions; ++a) {
                double pa = pol[s][a];
                if (pa == 0.0) continue;
                rc(u) += pa * inst.R[s][a];
                for (int y = 0; y < n; ++y) {
                    double p = pa * inst.P[a][s][y];
                    if (p == 0.0) continue;
                    if (inst.partition_labels[y] == i) {
                        int v = static_cast<int>(std::lower_bound(members.begin(), members.end(), y) -
                                                 members.begin());
                        Qin(u, v) += p;
                    } else {
                        Eout(u, y) += p;
                    }
                }
            }
        }
        Eigen::MatrixXd Min = Eigen::MatrixXd::Identity(c, c) - g * Qin;
        Eigen::MatrixXd rhs(c, n + 1);
        rhs.col(0) = rc;
        rhs.rightCols(n) = g * Eout;
        Eigen::MatrixXd X = Min.partialPivLu().solve(rhs);
        for (int u = 0; u < c; ++u) {
            rtilde(members[u]) = X(u, 0);
            D.row(members[u]) = X.row(u).tail(n);
        }
    }
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - D;
    Eigen::VectorXd V = A.partialPivLu().solve(rtilde);
    return std::vector<double>(V.data(), V.data() + n);
}

TabularInstance TabularSkillMdp::as_instance() const {
    TabularInstance inst;
    inst.n_states = n_states;
    inst.n_actions = n_actions;
    inst.P = P;
    inst.R = R;
    inst.gamma = gamma;
    return inst;
}

TabularSkillMdp build_exact_skill_mdp(const TabularInstance& inst, int class_index,
                                      const std::vector<double>& exit_values) {
    std::vector<int> members = inst.class_members(class_index);
    if (members.empty()) throw std::invalid_argument("empty partition class");
    TabularSkillMdp mdp;
    mdp.members = members;
    mdp.n_actions = inst.n_actions;
    mdp.gamma = inst.gamma;
    const int c = static_cast<int>(members.size());
    mdp.n_states = c + 1; // terminal s_T last
    const int T = c;
    mdp.P.assign(inst.n_actions,
                 std::vector<std::vector<double>>(mdp.n_states, std::vector<double>(mdp.n_states, 0.0)));
    mdp.R.assign(mdp.n_states, std::vector<double>(inst.n_actions, 0.0));
    for (int a = 0; a < inst.n_actions; ++a) {
        for (int u = 0; u < c; ++u) {
            int s = members[u];
            double exit_mass = 0.0;
            double interior_mass = 0.0;
            double exit_value_mass = 0.0;
            for (int y = 0; y < inst.n_states; ++y) {
                double p = inst.P[a][s][y];
                if (p == 0.0) continue;
                if (inst.partition_labels[y] == class_index) {
                    int v = static_cast<int>(std::lower_bound(members.begin(), members.end(), y) -
                                             members.begin());
                    mdp.P[a][u][v] += p;
                    interior_mass += p;
                } else {
                    exit_mass += p;
                    exit_value_mass += p * exit_values[y];
                }
            }
            mdp.P[a][u][T] = exit_mass;
            // R' = sum_{s' in P_i} P R(s,a) + sum_{y notin P_i} P (R(s,a) + g V(y))
            mdp.R[u][a] = interior_mass * inst.R[s][a] +
                          exit_mass * inst.R[s][a] + inst.gamma * exit_value_mass;
        }
        mdp.P[a][T][T] = 1.0;
    }
    return mdp;
}

SkillMdpSolution solve_skill_mdp_exact(const TabularInstance& inst, int class_index,
                                       const std::vector<double>& exit_values) {
    TabularSkillMdp mdp = build_exact_skill_mdp(inst, class_index, exit_values);
    ValueIterationResult vi = value_iteration(mdp.as_instance(), 1e-12);
    SkillMdpSolution sol;
    sol.mdp = std::move(mdp);
    sol.v_class.assign(sol.mdp.members.size(), 0.0);
    for (std::size_t u = 0; u < sol.mdp.members.size(); ++u) sol.v_class[u] = vi.V[u];
    sol.policy_full = uniform_tabular_policy(inst.n_states, inst.n_actions);
    for (std::size_t u = 0; u < sol.mdp.members.size(); ++u) {
        std::vector<double> row(inst.n_actions, 0.0);
        row[vi.greedy[u]] = 1.0;
        sol.policy_full[sol.mdp.members[u]] = row;
    }
    return sol;
}

std::vector<double> evaluate_policy_in_skill_mdp(const TabularSkillMdp& mdp,
                                                 const TabularPolicy& class_policy) {
    const int c = static_cast<int>(mdp.members.size());
    Eigen::MatrixXd Qin = Eigen::MatrixXd::Zero(c, c);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(c);
    for (int u = 0; u < c; ++u) {
        const auto& row = class_policy[mdp.members[u]];
        for (int a = 0; a < mdp.n_actions; ++a) {
            double pa = row[a];
            if (pa == 0.0) continue;
            r(u) += pa * mdp.R[u][a];
            for (int v = 0; v < c; ++v) Qin(u, v) += pa * mdp.P[a][u][v];
        }
    }
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(c, c) - mdp.gamma * Qin;
    Eigen::VectorXd V = A.partialPivLu().solve(r);
    return std::vector<double>(V.data(), V.data() + c);
}

EtaReport measure_eta(const TabularInstance& inst, const TabularSkillSet& skills,
                      const std::vector<double>& exit_values) {
    EtaReport rep;
    const int m = inst.num_classes();
    rep.per_class.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        if (inst.class_members(i).empty()) continue;
        SkillMdpSolution sol = solve_skill_mdp_exact(inst, i, exit_values);
        std::vector<double> v_pol = evaluate_policy_in_skill_mdp(sol.mdp, skills.policies[i]);
        double eta = 0.0;
        for (std::size_t u = 0; u < sol.v_class.size(); ++u)
            eta = std::max(eta, sol.v_class[u] - v_pol[u]);
        rep.per_class[i] = eta;
        rep.eta_p = std::max(rep.eta_p, eta);
    }
    return rep;
}

TabularInstance random_instance(int n_states, int n_actions, int m, double gamma, Rng& rng) {
    TabularInstance inst;
    inst.n_states = n_states;
    inst.n_actions = n_actions;
    inst.gamma = gamma;
    inst.P.assign(n_actions, std::vector<std::vector<double>>(
                                 n_states, std::vector<double>(n_states, 0.0)));
    inst.R.assign(n_states, std::vector<double>(n_actions, 0.0));
    for (int a = 0; a < n_actions; ++a)
        for (int s = 0; s < n_states; ++s) {
            double total = 0.0;
            for (int y = 0; y < n_states; ++y) {
                double e = -std::log(1.0 - rng.uniform()); // Exp(1) => Dirichlet(1) row
                inst.P[a][s][y] = e;
                total += e;
            }
            for (int y = 0; y < n_states; ++y) inst.P[a][s][y] /= total;
        }
    for (int s = 0; s < n_states; ++s)
        for (int a = 0; a < n_actions; ++a) inst.R[s][a] = rng.uniform();
    inst.partition_labels.resize(n_states);
    for (int s = 0; s < n_states; ++s) inst.partition_labels[s] = s % m;
    for (int s = n_states - 1; s > 0; --s)
        std::swap(inst.partition_labels[s], inst.partition_labels[rng.uniform_int(s + 1)]);
    inst.validate();
    return inst;
}

TabularInstance chain_instance(double gamma) {
    TabularInstance inst;
    inst.n_states = 3;
    inst.n_actions = 2;
    inst.gamma = gamma;
    inst.P.assign(2, std::vector<std::vector<double>>(3, std::vector<double>(3, 0.0)));
    inst.R.assign(3, std::vector<double>(2, 0.0));
    // action 0: left (or stay at s0), action 1: right
    inst.P[0][0][0] = 1.0;
    inst.P[0][1][0] = 1.0;
    inst.P[0][2][2] = 1.0;
    inst.P[1][0][1] = 1.0;
    inst.P[1][1][2] = 1.0;
    inst.P[1][2][2] = 1.0;
    inst.R[1][1] = 1.0; // reward on entering the goal
    inst.partition_labels = {0, 1, 1};
    inst.validate();
    return inst;
}

TabularEnv::TabularEnv(TabularInstance inst, std::vector<double> start_dist)
    : inst_(std::move(inst)), start_dist_(std::move(start_dist)) {
    inst_.validate();
    bounds_.low = {0.0};
    bounds_.high = {static_cast<double>(inst_.n_states)};
    absorbing_zero_.assign(inst_.n_states, false);
    for (int s = 0; s < inst_.n_states; ++s) {
        bool absorbing = true;
        for (int a = 0; a < inst_.n_actions && absorbing; ++a)
            if (inst_.P[a][s][s] != 1.0 || inst_.R[s][a] != 0.0) absorbing = false;
        absorbing_zero_[s] = absorbing;
    }
    if (start_dist_.empty()) {
        // uniform over non-absorbing states
        std::vector<int> live;
        for (int s = 0; s < inst_.n_states; ++s)
            if (!absorbing_zero_[s]) live.push_back(s);
        if (live.empty()) live.push_back(0);
        start_dist_.assign(inst_.n_states, 0.0);
        for (int s : live) start_dist_[s] = 1.0 / live.size();
    }
}

int TabularEnv::state_index(const State& s) const {
    auto idx = static_cast<long>(std::floor(s.at(0)));
    if (idx < 0) idx = 0;
    if (idx >= inst_.n_states) idx = inst_.n_states - 1;
    return static_cast<int>(idx);
}

State TabularEnv::state_point(int idx) const {
    return State{static_cast<double>(idx) + 0.5};
}

StepResult TabularEnv::step(const State& s, int action, Rng& rng) const {
    int si = state_index(s);
    const auto& row = inst_.P[action][si];
    double u = rng.uniform();
    double acc = 0.0;
    int y = inst_.n_states - 1;
    for (int j = 0; j < inst_.n_states; ++j) {
        acc += row[j];
        if (u < acc) {
            y = j;
            break;
        }
    }
    StepResult res;
    res.next_state = state_point(y);
    res.reward = inst_.R[si][action];
    res.done = absorbing_zero_[y];
    return res;
}

State TabularEnv::initial_state(Rng& rng) const {
    double u = rng.uniform();
    double acc = 0.0;
    for (int s = 0; s < inst_.n_states; ++s) {
        acc += start_dist_[s];
        if (u < acc) return state_point(s);
    }
    return state_point(inst_.n_states - 1);
}

State TabularEnv::sample_state_in_box(const State& lo, const State& hi, Rng& rng) const {
    std::vector<int> candidates;
    for (int s = 0; s < inst_.n_states; ++s) {
        double x = s + 0.5;
        if (x >= lo.at(0) && x <= hi.at(0)) candidates.push_back(s);
    }
    if (candidates.empty()) return state_point(state_index(lo));
    return state_point(candidates[rng.uniform_int(static_cast<int>(candidates.size()))]);
}

} // namespace lsb
