#pragma once

#include "lsb/mdp.hpp"

namespace lsb {

// Two-puddle navigation on the unit square. Actions {N, S, E, W} move 0.05
// plus Gaussian noise. Rewards are the rescaled scheme: 1 at the goal corner
// (x + y >= 1.9, episode ends), otherwise max(0, 0.5 - 2.5 * depth) where
// depth is the summed penetration into the capsule puddles, so the deepest
// point pays 0 and puddle-free steps pay the 0.5 baseline.
class PuddleWorldEnv : public EnvModel {
public:
    explicit PuddleWorldEnv(double gamma = 0.45);

    std::size_t state_dim() const override { return 2; }
    int action_count() const override { return 4; }
    double gamma() const override { return gamma_; }
    const StateBounds& bounds() const override { return bounds_; }

    StepResult step(const State& s, int action, Rng& rng) const override;
    State initial_state(Rng& rng) const override;

    // Summed penetration depth of both puddles at s.
    double puddle_depth(const State& s) const;
    double step_reward(const State& s) const;
    bool at_goal(const State& s) const { return s.at(0) + s.at(1) >= kGoalLine; }

    static constexpr double kStep = 0.05;
    static constexpr double kNoiseSigma = 0.01;
    static constexpr double kPuddleRadius = 0.1;
    static constexpr double kGoalLine = 1.9;
    static constexpr double kBaseline = 0.5;
    // 0.5 / (2 * kPuddleRadius): maps the maximum summed depth to reward 0
    static constexpr double kPenaltySlope = 2.5;

private:
    double gamma_;
    StateBounds bounds_;
};

} // namespace lsb
