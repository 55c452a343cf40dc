#pragma once

#include "lsb/mdp.hpp"

namespace lsb {

// Classic under-powered car: state (position, velocity), actions
// {reverse, coast, forward}. Native rewards are already the rescaled scheme:
// 1 on reaching the goal at p >= 0.5, else 0.
class MountainCarEnv : public EnvModel {
public:
    explicit MountainCarEnv(double gamma = 0.99);

    std::size_t state_dim() const override { return 2; }
    int action_count() const override { return 3; }
    double gamma() const override { return gamma_; }
    const StateBounds& bounds() const override { return bounds_; }

    StepResult step(const State& s, int action, Rng& rng) const override;
    State initial_state(Rng& rng) const override;

    static constexpr double kForce = 0.001;
    static constexpr double kGravity = 0.0025;
    static constexpr double kGoalPosition = 0.5;

private:
    double gamma_;
    StateBounds bounds_;
};

} // namespace lsb
