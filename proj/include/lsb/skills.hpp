#pragma once

#include <iosfwd>
#include <vector>

#include "lsb/features.hpp"
#include "lsb/mdp.hpp"
#include "lsb/partition.hpp"

namespace lsb {

// sigma = <pi_theta, beta_i>. The termination rule beta_i is induced by the
// partition class the skill belongs to.
struct Skill {
    std::vector<double> theta;
    int class_index = 0;
};

struct SkillSet {
    std::vector<Skill> skills;

    const Skill& for_class(int i) const { return skills.at(static_cast<std::size_t>(i)); }
    Skill& for_class(int i) { return skills.at(static_cast<std::size_t>(i)); }
};

// Zero-initialized (uniform) skill per partition class.
SkillSet make_uniform_skill_set(int m, const FeatureMap& features);

// probs[a] = exp(theta . zeta(s,a)) / sum_a' exp(theta . zeta(s,a')),
// computed with max-subtraction.
std::vector<double> softmax_action_probs(const std::vector<double>& theta,
                                         const FeatureMap& features,
                                         const State& s, int action_count);

struct SkillExecutionResult {
    double discounted_reward = 0.0; // gamma^{t-1}-weighted from skill entry
    State exit_state;
    int duration = 0;
    bool terminated_episode = false;
    Trace trace; // the raw steps, for cross-checks against discounted_return
};

// Runs pi_theta from s0 until it leaves the skill's partition class, the
// episode ends, or max_steps elapse. s0 must lie in the skill's own class.
SkillExecutionResult execute_skill(const EnvModel& env, const Partition& partition,
                                   const Skill& skill, const FeatureMap& features,
                                   const State& s0, int max_steps, Rng& rng);

// pi(s) = pi_{mu(s)}(.|s): the flat per-state action distribution of <mu, Sigma>.
std::vector<double> flatten_skill_policy(const Partition& partition, const SkillSet& skill_set,
                                         const FeatureMap& features, const State& s,
                                         int action_count);

PolicyFn make_flat_policy(const Partition& partition, const SkillSet& skill_set,
                          const FeatureMap& features, int action_count);

// Versioned text serialization; theta printed at 17 significant digits so a
// round trip is bit exact.
void save_skill_set(std::ostream& os, const SkillSet& set, const FeatureMap& features);
SkillSet load_skill_set(std::istream& is, std::string* feature_kind = nullptr);

} // namespace lsb
