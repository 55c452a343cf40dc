#pragma once

#include <string>
#include <vector>

#include "lsb/types.hpp"

namespace lsb {

// Policy feature map zeta(s, a). Three kinds cover the benchmarks:
//  - one_hot_action: zeta depends on the action only, so the softmax policy is
//    a probability distribution over actions independent of the state.
//  - poly_action_block: per-action block of <1, s_0 .. s_{D-1}> on states
//    normalized to [0,1], d' = (D+1) * |A|.
//  - tabular: one-hot over (state index, action) for integer-embedded finite
//    instances; exact representation used by the oracle cross-checks.
//  - grid_action_block: one-hot over (grid cell, action); the critic
//    representation phi(s, a) of the actor-critic learner.
class FeatureMap {
public:
    enum class Kind { OneHotAction, PolyActionBlock, Tabular, GridActionBlock };

    static FeatureMap one_hot_action(int action_count);
    static FeatureMap poly_action_block(int action_count, const StateBounds& bounds);
    static FeatureMap tabular(int n_states, int action_count);
    static FeatureMap grid_action_block(int action_count, const StateBounds& bounds,
                                        const std::vector<int>& cells);

    Kind kind() const { return kind_; }
    int action_count() const { return action_count_; }
    std::size_t output_dim() const { return output_dim_; }

    // Dense zeta(s, a).
    std::vector<double> evaluate(const State& s, int action) const;

    // Sparse form: indices plus matching values (used by the learners).
    void evaluate_sparse(const State& s, int action,
                         std::vector<std::size_t>& idx, std::vector<double>& val) const;

    std::string kind_name() const;
    static FeatureMap from_kind_name(const std::string& name, int action_count,
                                     const StateBounds& bounds, int n_states = 0);

private:
    FeatureMap() = default;
    Kind kind_ = Kind::OneHotAction;
    int action_count_ = 0;
    int n_states_ = 0;
    std::size_t output_dim_ = 0;
    StateBounds bounds_;      // PolyActionBlock / GridActionBlock
    std::vector<int> cells_;  // GridActionBlock only
};

} // namespace lsb
