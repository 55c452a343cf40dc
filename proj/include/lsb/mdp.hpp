#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lsb/rng.hpp"
#include "lsb/types.hpp"

namespace lsb {

struct StepResult {
    State next_state;
    double reward = 0.0;
    bool done = false;
};

// Generative MDP: a sampler for (P, R) plus gamma, a finite action set and a
// bounded state box. Rewards must already be rescaled into [0, 1] by the
// environment itself.
class EnvModel {
public:
    virtual ~EnvModel() = default;

    virtual std::size_t state_dim() const = 0;
    virtual int action_count() const = 0;
    virtual double gamma() const = 0;
    virtual const StateBounds& bounds() const = 0;

    virtual StepResult step(const State& s, int action, Rng& rng) const = 0;
    virtual State initial_state(Rng& rng) const = 0;

    // Uniform sample of a valid state inside the given sub-box. Environments
    // with unreachable regions (pinball obstacles) override this.
    virtual State sample_state_in_box(const State& lo, const State& hi, Rng& rng) const {
        State s(lo.size());
        for (std::size_t k = 0; k < s.size(); ++k) s[k] = rng.uniform(lo[k], hi[k]);
        return s;
    }
};

struct TraceStep {
    State state;
    int action = 0;
    double reward = 0.0;
    State next_state;
    bool done = false;
};

struct Trace {
    std::vector<TraceStep> steps;
    std::uint64_t seed = 0;
};

struct ValueGapReport {
    double sup_gap = 0.0;
    std::size_t argmax_state = 0;
};

// Stochastic policy as a per-state action distribution.
using PolicyFn = std::function<std::vector<double>(const State&)>;

// Sum_t gamma^{t-1} r_t over the trace.
double discounted_return(const Trace& trace, double gamma);

// Samples one trajectory of at most `horizon` steps. Throws if the
// environment emits a reward outside [0, 1].
Trace rollout(const EnvModel& env, const PolicyFn& policy, const State& s0,
              int horizon, Rng& rng);

int sample_from_distribution(const std::vector<double>& probs, Rng& rng);

// Mean discounted return over n_rollouts independent rollouts from s0,
// truncated at `horizon`. Rollout k draws from substream derive_seed(seed, k).
double monte_carlo_value(const EnvModel& env, const PolicyFn& policy, const State& s0,
                         int horizon, int n_rollouts, std::uint64_t seed);

// Same but also reports the standard error of the mean.
struct McEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    int n = 0;
};
McEstimate monte_carlo_value_with_se(const EnvModel& env, const PolicyFn& policy,
                                     const State& s0, int horizon, int n_rollouts,
                                     std::uint64_t seed);

// max_s (v_star[s] - v[s]) and where it is attained.
ValueGapReport sup_gap(const std::vector<double>& v_star, const std::vector<double>& v);

// Default truncation horizon: smallest H with gamma^H / (1 - gamma) < 1e-4.
int default_horizon(double gamma, int cap = 20000);

} // namespace lsb
