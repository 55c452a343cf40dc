#include "lsb/envs/mountain_car.hpp"

#include <algorithm>
#include <cmath>

namespace lsb {

MountainCarEnv::MountainCarEnv(double gamma) : gamma_(gamma) {
    bounds_.low = {-1.2, -0.07};
    bounds_.high = {0.6, 0.07};
}

StepResult MountainCarEnv::step(const State& s, int action, Rng&) const {
    double p = s.at(0), v = s.at(1);
    double v2 = v + kForce * (action - 1) - kGravity * std::cos(3.0 * p);
    v2 = std::clamp(v2, bounds_.low[1], bounds_.high[1]);
    double p2 = p + v2;
    StepResult res;
    if (p2 >= kGoalPosition) {
        res.next_state = {kGoalPosition, v2};
        res.reward = 1.0;
        res.done = true;
        return res;
    }
    if (p2 < bounds_.low[0]) {
        p2 = bounds_.low[0];
        v2 = 0.0; // inelastic wall at the left edge
    }
    res.next_state = {p2, v2};
    res.reward = 0.0;
    res.done = false;
    return res;
}

State MountainCarEnv::initial_state(Rng& rng) const {
    return {rng.uniform(-0.6, -0.4), 0.0};
}

} // namespace lsb
