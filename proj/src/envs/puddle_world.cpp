#include "lsb/envs/puddle_world.hpp"

#include <algorithm>
#include <cmath>

namespace lsb {

namespace {

// Distance from point to segment [a, b].
double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
    double vx = bx - ax, vy = by - ay;
    double wx = px - ax, wy = py - ay;
    double len2 = vx * vx + vy * vy;
    double t = len2 > 0.0 ? std::clamp((wx * vx + wy * vy) / len2, 0.0, 1.0) : 0.0;
    double dx = px - (ax + t * vx), dy = py - (ay + t * vy);
    return std::sqrt(dx * dx + dy * dy);
}

} // namespace

PuddleWorldEnv::PuddleWorldEnv(double gamma) : gamma_(gamma) {
    bounds_.low = {0.0, 0.0};
    bounds_.high = {1.0, 1.0};
}

double PuddleWorldEnv::puddle_depth(const State& s) const {
    // classic layout: one horizontal and one vertical capsule
    double d1 = segment_distance(s[0], s[1], 0.10, 0.75, 0.45, 0.75);
    double d2 = segment_distance(s[0], s[1], 0.45, 0.40, 0.45, 0.80);
    double depth = std::max(0.0, kPuddleRadius - d1) + std::max(0.0, kPuddleRadius - d2);
    return depth;
}

double PuddleWorldEnv::step_reward(const State& s) const {
    return std::max(0.0, kBaseline - kPenaltySlope * puddle_depth(s));
}

StepResult PuddleWorldEnv::step(const State& s, int action, Rng& rng) const {
    double dx = 0.0, dy = 0.0;
    switch (action) {
    case 0: dy = kStep; break;  // N
    case 1: dy = -kStep; break; // S
    case 2: dx = kStep; break;  // E
    case 3: dx = -kStep; break; // W
    default: throw std::invalid_argument("action out of range");
    }
    double nx = s.at(0) + dx + rng.normal(0.0, kNoiseSigma);
    double ny = s.at(1) + dy + rng.normal(0.0, kNoiseSigma);
    nx = std::clamp(nx, bounds_.low[0], bounds_.high[0]);
    ny = std::clamp(ny, bounds_.low[1], bounds_.high[1]);
    StepResult res;
    res.next_state = {nx, ny};
    if (at_goal(res.next_state)) {
        res.reward = 1.0;
        res.done = true;
    } else {
        res.reward = step_reward(res.next_state);
        res.done = false;
    }
    return res;
}

State PuddleWorldEnv::initial_state(Rng& rng) const {
    // uniform over the non-goal region
    for (int tries = 0; tries < 1000; ++tries) {
        State s = {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
        if (!at_goal(s)) return s;
    }
    return {0.0, 0.0};
}

} // namespace lsb
