#pragma once

#include <functional>

#include "lsb/mdp.hpp"
#include "lsb/partition.hpp"

namespace lsb {

using ValueFn = std::function<double(const State&)>;

// Episodic MDP around partition class i: interior transitions follow the base
// env; leaving the class (or ending the episode) moves to the absorbing
// terminal and pays r + gamma * V_M(y). The exit value function is frozen at
// construction.
class SkillMdp {
public:
    SkillMdp(const EnvModel& env, const Partition& partition, int class_index,
             ValueFn exit_value);

    const EnvModel& base_env() const { return env_; }
    int class_index() const { return class_index_; }
    int action_count() const { return env_.action_count(); }
    double gamma() const { return env_.gamma(); }

    // One sampled transition from s in P_i. `done` marks arrival at s_T.
    StepResult step(const State& s, int action, Rng& rng) const;

    // Uniform start state inside P_i. Provided by the builder because the
    // class geometry depends on the partition kind.
    State sample_start(Rng& rng) const;
    void set_start_sampler(std::function<State(Rng&)> sampler) { start_sampler_ = std::move(sampler); }

    // Rewards are bounded by 1 + gamma / (1 - gamma) because exits embed V_M.
    double reward_bound() const { return 1.0 + gamma() / (1.0 - gamma()); }

private:
    const EnvModel& env_;
    const Partition& partition_;
    int class_index_;
    ValueFn exit_value_;
    std::function<State(Rng&)> start_sampler_;
};

// Wires the default start sampler for grid partitions (uniform in the cell
// box via the env's valid-state sampler).
SkillMdp build_skill_mdp(const EnvModel& env, const Partition& partition, int class_index,
                         ValueFn exit_value);

} // namespace lsb
