#include "lsb/mdp.hpp"

#include <cmath>
#include <stdexcept>

namespace lsb {

double discounted_return(const Trace& trace, double gamma) {
    if (trace.steps.empty()) throw std::invalid_argument("empty trace");
    if (gamma < 0.0 || gamma >= 1.0) throw std::invalid_argument("gamma must be in [0,1)");
    double total = 0.0;
    double w = 1.0;
    for (const TraceStep& st : trace.steps) {
        total += w * st.reward;
        w *= gamma;
    }
    return total;
}

int sample_from_distribution(const std::vector<double>& probs, Rng& rng) {
    double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t a = 0; a < probs.size(); ++a) {
        acc += probs[a];
        if (u < acc) return static_cast<int>(a);
    }
    return static_cast<int>(probs.size()) - 1;
}

Trace rollout(const EnvModel& env, const PolicyFn& policy, const State& s0,
              int horizon, Rng& rng) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    Trace trace;
    State s = s0;
    for (int t = 0; t < horizon; ++t) {
        int a = sample_from_distribution(policy(s), rng);
        StepResult res = env.step(s, a, rng);
        if (res.reward < 0.0 || res.reward > 1.0)
            throw std::runtime_error("environment reward outside [0,1]");
        trace.steps.push_back({s, a, res.reward, res.next_state, res.done});
        if (res.done) break;
        s = res.next_state;
    }
    return trace;
}

McEstimate monte_carlo_value_with_se(const EnvModel& env, const PolicyFn& policy,
                                     const State& s0, int horizon, int n_rollouts,
                                     std::uint64_t seed) {
    if (n_rollouts < 1) throw std::invalid_argument("n_rollouts must be >= 1");
    double sum = 0.0, sumsq = 0.0;
    for (int k = 0; k < n_rollouts; ++k) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
        Trace tr = rollout(env, policy, s0, horizon, rng);
        double g = tr.steps.empty() ? 0.0 : discounted_return(tr, env.gamma());
        sum += g;
        sumsq += g * g;
    }
    McEstimate est;
    est.n = n_rollouts;
    est.mean = sum / n_rollouts;
    if (n_rollouts > 1) {
        double var = (sumsq - sum * sum / n_rollouts) / (n_rollouts - 1);
        if (var < 0.0) var = 0.0;
        est.stderr_of_mean = std::sqrt(var / n_rollouts);
    }
    return est;
}

double monte_carlo_value(const EnvModel& env, const PolicyFn& policy, const State& s0,
                         int horizon, int n_rollouts, std::uint64_t seed) {
    return monte_carlo_value_with_se(env, policy, s0, horizon, n_rollouts, seed).mean;
}

ValueGapReport sup_gap(const std::vector<double>& v_star, const std::vector<double>& v) {
    if (v_star.size() != v.size() || v_star.empty())
        throw std::invalid_argument("sup_gap: mismatched state index sets");
    ValueGapReport rep;
    rep.sup_gap = v_star[0] - v[0];
    rep.argmax_state = 0;
    for (std::size_t s = 1; s < v_star.size(); ++s) {
        double gap = v_star[s] - v[s];
        if (gap > rep.sup_gap) {
            rep.sup_gap = gap;
            rep.argmax_state = s;
        }
    }
    if (rep.sup_gap < 0.0) rep.sup_gap = 0.0;
    return rep;
}

int default_horizon(double gamma, int cap) {
    if (gamma <= 0.0) return 1;
    double h = std::log(1e-4 * (1.0 - gamma)) / std::log(gamma);
    int H = static_cast<int>(std::ceil(h));
    if (H < 1) H = 1;
    if (H > cap) H = cap;
    return H;
}

} // namespace lsb
