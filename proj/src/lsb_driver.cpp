#include "lsb/lsb_driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lsb/skill_mdp.hpp"
#include "lsb/tabular.hpp"

namespace lsb {

int min_iterations(double epsilon, double gamma) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must be in (0,1)");
    double x = epsilon * (1.0 - gamma);
    if (x >= 1.0) return 1;
    int k = static_cast<int>(std::ceil(std::log(x) / std::log(gamma)));
    return std::max(k, 1);
}

std::vector<int> goal_first_order(const EnvModel& env, const Partition& partition,
                                  std::uint64_t seed, int samples_per_class) {
    const int m = partition.num_classes();
    std::vector<double> score(m, 0.0);
    const auto* grid = dynamic_cast<const GridPartition*>(&partition);
    Rng rng(derive_seed(seed, 0x676f616c31737400ULL));
    for (int i = 0; i < m; ++i) {
        double total = 0.0;
        int count = 0;
        for (int k = 0; k < samples_per_class; ++k) {
            State s;
            if (grid) {
                State lo, hi;
                grid->cell_box(i, lo, hi);
                s = env.sample_state_in_box(lo, hi, rng);
            } else {
                s = env.sample_state_in_box(env.bounds().low, env.bounds().high, rng);
                if (partition.class_of(s) != i) continue;
            }
            for (int a = 0; a < env.action_count(); ++a) {
                StepResult res = env.step(s, a, rng);
                total += res.reward;
                ++count;
            }
        }
        score[i] = count > 0 ? total / count : 0.0;
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return score[a] > score[b]; });
    return order;
}

namespace {

ValueFn evaluate_policy(const EnvModel& env, const Partition& partition, const SkillSet& sigma,
                        const FeatureMap& skill_features, const LsbConfig& config,
                        NnValueFn& nn_store, std::uint64_t seed, double& proxy_out) {
    if (config.eval_method == LsbConfig::EvalMethod::Lstd) {
        BinaryGridFeatures grid(env.bounds(), config.eval_grid);
        LinearValueFn vf =
            lstd_evaluate(env, partition, sigma, skill_features, grid, config.lstd, seed);
        double norm = 0.0;
        for (double w : vf.weights) norm += std::abs(w);
        proxy_out = norm / vf.weights.size();
        return [vf](const State& s) { return vf(s); };
    }
    int horizon = config.eval_horizon > 0 ? config.eval_horizon : default_horizon(env.gamma());
    NnValueFn refreshed = refresh_nn_vf(nn_store, env, partition, sigma, skill_features,
                                        config.rollouts_per_point, horizon, seed);
    double delta = 0.0;
    for (std::size_t i = 0; i < refreshed.values.size(); ++i)
        delta += std::abs(refreshed.values[i] - nn_store.values[i]);
    proxy_out = delta / refreshed.values.size();
    nn_store = refreshed;
    NnValueFn snapshot = nn_store;
    return [snapshot](const State& s) { return snapshot(s); };
}

std::vector<double> solve_skill(const EnvModel& env, const Partition& partition, int class_index,
                                const ValueFn& value_fn, const FeatureMap& skill_features,
                                const LsbConfig& config, std::uint64_t seed) {
    SkillMdp mdp = build_skill_mdp(env, partition, class_index, value_fn);
    if (config.learner == LsbConfig::Learner::ActorCritic) {
        FeatureMap critic = [&]() {
            if (const auto* tab = dynamic_cast<const TabularEnv*>(&env))
                return FeatureMap::tabular(tab->instance().n_states, env.action_count());
            const auto* grid = dynamic_cast<const GridPartition*>(&partition);
            if (!grid) throw std::invalid_argument("actor-critic needs a grid partition");
            State lo, hi;
            grid->cell_box(class_index, lo, hi);
            return FeatureMap::grid_action_block(env.action_count(), StateBounds{lo, hi},
                                                 config.critic_cells);
        }();
        std::vector<double> theta0(skill_features.output_dim(), 0.0);
        return train_skill_actor_critic(mdp, critic, skill_features, theta0, config.ac, seed);
    }
    return ucb_rps_solve(mdp, skill_features, config.ucb, seed);
}

} // namespace

LsbResult run_lsb(const EnvModel& env, const Partition& partition,
                  const FeatureMap& skill_features, const LsbConfig& config,
                  std::uint64_t seed, const ReturnEstimator& estimator) {
    if (config.iterations < 1) throw std::invalid_argument("lsb.iterations must be >= 1");
    const int m = partition.num_classes();

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    if (config.order == LsbConfig::Order::GoalFirst) {
        order = goal_first_order(env, partition, seed);
    } else if (config.order == LsbConfig::Order::Custom) {
        if (static_cast<int>(config.custom_order.size()) != m)
            throw std::invalid_argument("custom order must be a permutation of the classes");
        order = config.custom_order;
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < m; ++i)
            if (sorted[i] != i)
                throw std::invalid_argument("custom order must be a permutation of the classes");
    }

    LsbResult result;
    result.skill_set = make_uniform_skill_set(m, skill_features);

    NnValueFn nn_store;
    if (config.eval_method == LsbConfig::EvalMethod::Nn)
        nn_store = make_nn_value_fn(env, config.nn_points, derive_seed(seed, 0x6e6e0000ULL));

    for (int k = 1; k <= config.iterations; ++k) {
        ValueFn value_fn;
        double proxy = 0.0;
        if (config.evaluate_per_sweep)
            value_fn = evaluate_policy(env, partition, result.skill_set, skill_features, config,
                                       nn_store, derive_seed(seed, 7000 + k), proxy);
        for (int step = 0; step < m; ++step) {
            int i = order[step];
            auto t0 = std::chrono::steady_clock::now();
            std::uint64_t update_seed =
                derive_seed(seed, static_cast<std::uint64_t>(k) * 1000 + step);
            UpdateRecord rec;
            rec.iteration = k;
            rec.skill_index = i;
            rec.pre_return = estimator ? estimator(result.skill_set) : 0.0;
            if (!config.evaluate_per_sweep)
                value_fn = evaluate_policy(env, partition, result.skill_set, skill_features,
                                           config, nn_store, derive_seed(update_seed, 1), proxy);
            rec.eval_error_proxy = proxy;
            try {
                result.skill_set.for_class(i).theta =
                    solve_skill(env, partition, i, value_fn, skill_features, config,
                                derive_seed(update_seed, 2));
            } catch (const std::exception& e) {
                throw std::runtime_error("skill update failed at iteration " + std::to_string(k) +
                                         ", class " + std::to_string(i) + ": " + e.what());
            }
            rec.post_return = estimator ? estimator(result.skill_set) : 0.0;
            rec.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
            result.log.push_back(rec);
        }
    }
    return result;
}

} // namespace lsb
