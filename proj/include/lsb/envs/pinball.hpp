#pragma once

#include <string>
#include <vector>

#include "lsb/mdp.hpp"

namespace lsb {

struct PinballTarget {
    double x = 0.9;
    double y = 0.9;
    double radius = 0.05;
};

struct PinballLayout {
    std::vector<std::vector<std::pair<double, double>>> obstacles; // polygon vertex lists
    double start_x = 0.1;
    double start_y = 0.9;
    PinballTarget target;
    double ball_radius = 0.02;
    double drag = 0.995;
    double restitution = 1.0;

    void validate() const; // throws on degenerate/self-intersecting polygons etc.
};

// Parses the line-oriented layout grammar:
//   ball <radius> / start <x> <y> / target <x> <y> <radius> / drag <d>
//   restitution <e> (optional) / polygon <x1> <y1> ... (>= 3 vertices)
// '#' starts a comment. Errors carry 1-based line numbers.
PinballLayout load_pinball_layout(const std::string& text);
PinballLayout load_pinball_layout_file(const std::string& path);

// Ball in a unit box with polygonal obstacles. State <x, y, vx, vy>; five
// actions: accelerate +-x, +-y, none. Velocity impulses of 0.2 clipped to
// [-1, 1], 20 integration substeps per action with circle-vs-polygon
// reflection (segment normals on edges, point normals at vertices), drag once
// per step. Reward 1 on entering the target (done), else 0.001.
class PinballEnv : public EnvModel {
public:
    explicit PinballEnv(PinballLayout layout, double gamma = 0.99);

    std::size_t state_dim() const override { return 4; }
    int action_count() const override { return 5; }
    double gamma() const override { return gamma_; }
    const StateBounds& bounds() const override { return bounds_; }

    StepResult step(const State& s, int action, Rng& rng) const override;
    State initial_state(Rng& rng) const override;
    State sample_state_in_box(const State& lo, const State& hi, Rng& rng) const override;

    const PinballLayout& layout() const { return layout_; }

    // Ball placement check: at least ball_radius away from every obstacle.
    bool position_valid(double x, double y) const;
    // Signed clearance to the nearest obstacle feature (negative inside).
    double obstacle_clearance(double x, double y) const;

    static constexpr double kImpulse = 0.2;
    static constexpr double kDt = 0.05;
    static constexpr int kSubsteps = 20;
    static constexpr double kStepReward = 0.001;

private:
    PinballLayout layout_;
    double gamma_;
    StateBounds bounds_;
};

} // namespace lsb
