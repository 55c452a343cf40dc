#include "lsb/skill_mdp.hpp"

#include <stdexcept>

#include "lsb/tabular.hpp"

namespace lsb {

SkillMdp::SkillMdp(const EnvModel& env, const Partition& partition, int class_index,
                   ValueFn exit_value)
    : env_(env), partition_(partition), class_index_(class_index),
      exit_value_(std::move(exit_value)) {
    if (class_index_ < 0 || class_index_ >= partition_.num_classes())
        throw std::invalid_argument("class index out of range");
}

StepResult SkillMdp::step(const State& s, int action, Rng& rng) const {
    if (partition_.class_of(s) != class_index_)
        throw std::invalid_argument("terminal state");
    StepResult base = env_.step(s, action, rng);
    if (base.done) {
        // Episode end counts as an exit with zero value beyond termination.
        return {base.next_state, base.reward, true};
    }
    if (partition_.class_of(base.next_state) != class_index_) {
        double psi = base.reward + env_.gamma() * exit_value_(base.next_state);
        return {base.next_state, psi, true};
    }
    return {base.next_state, base.reward, false};
}

State SkillMdp::sample_start(Rng& rng) const {
    if (!start_sampler_) throw std::runtime_error("skill MDP has no start sampler");
    return start_sampler_(rng);
}

SkillMdp build_skill_mdp(const EnvModel& env, const Partition& partition, int class_index,
                         ValueFn exit_value) {
    SkillMdp mdp(env, partition, class_index, std::move(exit_value));
    if (const auto* grid = dynamic_cast<const GridPartition*>(&partition)) {
        State lo, hi;
        grid->cell_box(class_index, lo, hi);
        mdp.set_start_sampler([&env, lo, hi](Rng& rng) {
            return env.sample_state_in_box(lo, hi, rng);
        });
    } else if (const auto* labels = dynamic_cast<const LabelPartition*>(&partition)) {
        // uniform over the class members of the embedded instance
        const auto* tab = dynamic_cast<const TabularEnv*>(&env);
        if (!tab) throw std::invalid_argument("label partitions require a tabular env");
        std::vector<int> members;
        for (int s = 0; s < tab->instance().n_states; ++s)
            if (labels->label_of_index(s) == class_index) members.push_back(s);
        if (members.empty()) throw std::invalid_argument("empty partition class");
        mdp.set_start_sampler([tab, members](Rng& rng) {
            return tab->state_point(members[rng.uniform_int(static_cast<int>(members.size()))]);
        });
    } else {
        throw std::invalid_argument("unsupported partition kind");
    }
    return mdp;
}

} // namespace lsb
