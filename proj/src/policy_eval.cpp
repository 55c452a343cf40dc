#include "lsb/policy_eval.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace lsb {

BinaryGridFeatures::BinaryGridFeatures(StateBounds b, std::vector<int> c)
    : bounds(std::move(b)), cells(std::move(c)) {
    bounds.validate();
    if (cells.size() != bounds.dim())
        throw std::invalid_argument("feature grid dims must match state dimension");
    output_dim = 1;
    for (int d : cells) {
        if (d < 1) throw std::invalid_argument("feature grid dims must be positive");
        output_dim *= static_cast<std::size_t>(d);
    }
}

std::size_t grid_features(const BinaryGridFeatures& features, const State& s) {
    return static_cast<std::size_t>(grid_cell_index(features.bounds, features.cells, s));
}

double NnValueFn::operator()(const State& s) const { return nn_value(*this, s); }

double nn_value(const NnValueFn& vf, const State& s) {
    if (vf.points.empty()) throw std::invalid_argument("empty value store");
    return vf.values[vf.index->nearest(vf.bounds.normalize(s))];
}

NnValueFn make_nn_value_fn(const EnvModel& env, int n_points, std::uint64_t seed) {
    if (n_points < 1) throw std::invalid_argument("n_points must be >= 1");
    NnValueFn vf;
    vf.bounds = env.bounds();
    Rng rng(derive_seed(seed, 0x6e6e5f706f696e74ULL));
    for (int i = 0; i < n_points; ++i)
        vf.points.push_back(env.sample_state_in_box(vf.bounds.low, vf.bounds.high, rng));
    vf.values.assign(vf.points.size(), 0.0);
    for (const State& p : vf.points) vf.normalized.push_back(vf.bounds.normalize(p));
    vf.index = std::make_shared<KdTree>(vf.normalized);
    return vf;
}

NnValueFn refresh_nn_vf(const NnValueFn& vf, const EnvModel& env, const Partition& partition,
                        const SkillSet& skill_set, const FeatureMap& skill_features,
                        int rollouts_per_point, int horizon, std::uint64_t seed) {
    if (rollouts_per_point < 1) throw std::invalid_argument("rollouts_per_point must be >= 1");
    NnValueFn out = vf;
    PolicyFn policy = make_flat_policy(partition, skill_set, skill_features, env.action_count());
    for (std::size_t i = 0; i < out.points.size(); ++i)
        out.values[i] = monte_carlo_value(env, policy, out.points[i], horizon,
                                          rollouts_per_point, derive_seed(seed, i));
    return out;
}

LinearValueFn lstd_evaluate(const EnvModel& env, const Partition& partition,
                            const SkillSet& skill_set, const FeatureMap& skill_features,
                            const BinaryGridFeatures& features, const LstdOptions& options,
                            std::uint64_t seed) {
    if (options.n_episodes < 1) throw std::invalid_argument("n_episodes must be >= 1");
    const auto d = static_cast<Eigen::Index>(features.output_dim);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
    const double gamma = env.gamma();
    for (int ep = 0; ep < options.n_episodes; ++ep) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(ep)));
        State s = env.initial_state(rng);
        int steps = 0;
        while (steps < options.max_episode_steps) {
            int i = partition.class_of(s);
            SkillExecutionResult res = execute_skill(env, partition, skill_set.for_class(i),
                                                     skill_features, s, options.max_skill_steps, rng);
            std::size_t fi = grid_features(features, s);
            double decay = std::pow(gamma, res.duration);
            A(fi, fi) += 1.0;
            b(fi) += res.discounted_reward;
            if (!res.terminated_episode) {
                std::size_t fj = grid_features(features, res.exit_state);
                A(fi, fj) -= decay;
            }
            steps += res.duration;
            if (res.terminated_episode) break;
            s = res.exit_state;
        }
    }
    A += options.ridge * Eigen::MatrixXd::Identity(d, d);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) throw std::runtime_error("insufficient coverage");
    Eigen::VectorXd omega = lu.solve(b);
    if (!omega.allFinite()) throw std::runtime_error("insufficient coverage");
    LinearValueFn vf;
    vf.features = features;
    vf.weights.assign(omega.data(), omega.data() + d);
    return vf;
}

} // namespace lsb
