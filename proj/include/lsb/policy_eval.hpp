#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lsb/kdtree.hpp"
#include "lsb/mdp.hpp"
#include "lsb/partition.hpp"
#include "lsb/skill_mdp.hpp"
#include "lsb/skills.hpp"

namespace lsb {

// One-hot indicator features over an axis-aligned cell grid (same boundary
// convention as the partition).
struct BinaryGridFeatures {
    StateBounds bounds;
    std::vector<int> cells;
    std::size_t output_dim = 0;

    BinaryGridFeatures() = default;
    BinaryGridFeatures(StateBounds b, std::vector<int> c);
};

// Index of the single active feature.
std::size_t grid_features(const BinaryGridFeatures& features, const State& s);

struct LinearValueFn {
    std::vector<double> weights;
    BinaryGridFeatures features;

    double operator()(const State& s) const { return weights[grid_features(features, s)]; }
};

// Fixed store of state-value pairs with nearest-neighbor queries in
// normalized coordinates.
struct NnValueFn {
    std::vector<State> points;            // raw coordinates
    std::vector<std::vector<double>> normalized;
    std::vector<double> values;
    std::shared_ptr<KdTree> index;
    StateBounds bounds;

    double operator()(const State& s) const;
};

double nn_value(const NnValueFn& vf, const State& s);

// N points sampled uniformly in the bounds (valid states only), values zero.
NnValueFn make_nn_value_fn(const EnvModel& env, int n_points, std::uint64_t seed);

// Re-estimates every stored value by Monte Carlo evaluation of <mu, Sigma>
// from the point; locations are kept.
NnValueFn refresh_nn_vf(const NnValueFn& vf, const EnvModel& env, const Partition& partition,
                        const SkillSet& skill_set, const FeatureMap& skill_features,
                        int rollouts_per_point, int horizon, std::uint64_t seed);

struct LstdOptions {
    int n_episodes = 100;
    int max_episode_steps = 200;
    int max_skill_steps = 200;
    double ridge = 1e-6;
};

// SMDP-LSTD over skill-level transitions (s, Rtilde, s', t) gathered by
// executing <mu, Sigma> from the env's start distribution:
//   A = sum phi(s) (phi(s) - gamma^t phi(s'))^T,  b = sum phi(s) Rtilde,
// with phi(s') = 0 on episode termination; solves the ridge-regularized
// system.
LinearValueFn lstd_evaluate(const EnvModel& env, const Partition& partition,
                            const SkillSet& skill_set, const FeatureMap& skill_features,
                            const BinaryGridFeatures& features, const LstdOptions& options,
                            std::uint64_t seed);

} // namespace lsb
