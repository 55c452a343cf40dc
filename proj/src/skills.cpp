#include "lsb/skills.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lsb {

SkillSet make_uniform_skill_set(int m, const FeatureMap& features) {
    SkillSet set;
    set.skills.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        set.skills[i].theta.assign(features.output_dim(), 0.0);
        set.skills[i].class_index = i;
    }
    return set;
}

std::vector<double> softmax_action_probs(const std::vector<double>& theta,
                                         const FeatureMap& features,
                                         const State& s, int action_count) {
    if (theta.size() != features.output_dim())
        throw std::invalid_argument("theta length does not match feature dimension");
    std::vector<double> logits(static_cast<std::size_t>(action_count), 0.0);
    std::vector<std::size_t> idx;
    std::vector<double> val;
    for (int a = 0; a < action_count; ++a) {
        features.evaluate_sparse(s, a, idx, val);
        double z = 0.0;
        for (std::size_t k = 0; k < idx.size(); ++k) z += theta[idx[k]] * val[k];
        logits[a] = z;
    }
    double mx = *std::max_element(logits.begin(), logits.end());
    if (!std::isfinite(mx)) throw std::runtime_error("non-finite softmax logits");
    double total = 0.0;
    std::vector<double> probs(logits.size());
    for (std::size_t a = 0; a < logits.size(); ++a) {
        probs[a] = std::exp(logits[a] - mx);
        total += probs[a];
    }
    for (double& p : probs) p /= total;
    return probs;
}

SkillExecutionResult execute_skill(const EnvModel& env, const Partition& partition,
                                   const Skill& skill, const FeatureMap& features,
                                   const State& s0, int max_steps, Rng& rng) {
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    if (partition.class_of(s0) != skill.class_index)
        throw std::invalid_argument("skill initialized outside its class");

    SkillExecutionResult res;
    State s = s0;
    double w = 1.0;
    const double gamma = env.gamma();
    for (int t = 0; t < max_steps; ++t) {
        auto probs = softmax_action_probs(skill.theta, features, s, env.action_count());
        int a = sample_from_distribution(probs, rng);
        StepResult sr = env.step(s, a, rng);
        res.trace.steps.push_back({s, a, sr.reward, sr.next_state, sr.done});
        res.discounted_reward += w * sr.reward;
        w *= gamma;
        res.duration = t + 1;
        res.exit_state = sr.next_state;
        if (sr.done) {
            res.terminated_episode = true;
            return res;
        }
        if (partition.termination(skill.class_index, sr.next_state) == 1) return res;
        s = sr.next_state;
    }
    return res;
}

std::vector<double> flatten_skill_policy(const Partition& partition, const SkillSet& skill_set,
                                         const FeatureMap& features, const State& s,
                                         int action_count) {
    int i = partition.class_of(s);
    return softmax_action_probs(skill_set.for_class(i).theta, features, s, action_count);
}

PolicyFn make_flat_policy(const Partition& partition, const SkillSet& skill_set,
                          const FeatureMap& features, int action_count) {
    return [&partition, skill_set, features, action_count](const State& s) {
        return flatten_skill_policy(partition, skill_set, features, s, action_count);
    };
}

void save_skill_set(std::ostream& os, const SkillSet& set, const FeatureMap& features) {
    os << "lsb-skillset v1\n";
    os << "features " << features.kind_name() << " " << features.output_dim() << "\n";
    os << "count " << set.skills.size() << "\n";
    char buf[64];
    for (const Skill& sk : set.skills) {
        os << "skill " << sk.class_index;
        for (double v : sk.theta) {
            std::snprintf(buf, sizeof(buf), " %.17g", v);
            os << buf;
        }
        os << "\n";
    }
}

SkillSet load_skill_set(std::istream& is, std::string* feature_kind) {
    std::string line;
    if (!std::getline(is, line) || line != "lsb-skillset v1")
        throw std::runtime_error("bad skill set header");
    std::string tok, kind;
    std::size_t dim = 0, count = 0;
    {
        std::getline(is, line);
        std::istringstream ls(line);
        ls >> tok >> kind >> dim;
        if (tok != "features") throw std::runtime_error("bad skill set features line");
    }
    {
        std::getline(is, line);
        std::istringstream ls(line);
        ls >> tok >> count;
        if (tok != "count") throw std::runtime_error("bad skill set count line");
    }
    if (feature_kind) *feature_kind = kind;
    SkillSet set;
    set.skills.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("truncated skill set");
        std::istringstream ls(line);
        ls >> tok;
        if (tok != "skill") throw std::runtime_error("bad skill record");
        Skill sk;
        ls >> sk.class_index;
        double v;
        while (ls >> v) sk.theta.push_back(v);
        if (sk.theta.size() != dim) throw std::runtime_error("skill record dimension mismatch");
        set.skills[i] = std::move(sk);
    }
    return set;
}

} // namespace lsb
