#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lsb/mdp.hpp"
#include "lsb/partition.hpp"
#include "lsb/policy_eval.hpp"
#include "lsb/skill_learners.hpp"
#include "lsb/skills.hpp"

namespace lsb {

struct LsbConfig {
    int iterations = 1;
    double epsilon = 0.1;

    enum class Order { Index, GoalFirst, Custom };
    Order order = Order::Index;
    std::vector<int> custom_order;

    // Re-evaluate before every skill update (Alg. 1 line placement); the
    // per-sweep variant evaluates once per iteration instead.
    bool evaluate_per_sweep = false;

    enum class EvalMethod { Lstd, Nn };
    EvalMethod eval_method = EvalMethod::Lstd;
    std::vector<int> eval_grid = {10, 10};
    LstdOptions lstd;
    int nn_points = 1000;
    int rollouts_per_point = 1;
    int eval_horizon = 0; // 0 -> default_horizon(gamma)

    enum class Learner { ActorCritic, UcbRps };
    Learner learner = Learner::ActorCritic;
    ActorCriticOptions ac;
    std::vector<int> critic_cells = {5, 5};
    UcbRpsOptions ucb;
};

struct UpdateRecord {
    int iteration = 0;   // 1-based sweep index
    int skill_index = 0;
    double pre_return = 0.0;
    double post_return = 0.0;
    double eval_error_proxy = 0.0;
    double wall_ms = 0.0;
};

struct LsbResult {
    SkillSet skill_set;
    std::vector<UpdateRecord> log; // exactly K * m records
};

// Optional estimator of the current <mu, Sigma> mean return, recorded before
// and after every skill update.
using ReturnEstimator = std::function<double(const SkillSet&)>;

// Algorithm 1: K sweeps of evaluate / construct / solve / replace, strictly
// sequential in the class order. Deterministic given the seed.
LsbResult run_lsb(const EnvModel& env, const Partition& partition,
                  const FeatureMap& skill_features, const LsbConfig& config,
                  std::uint64_t seed, const ReturnEstimator& estimator = nullptr);

// ceil(log_gamma(epsilon * (1 - gamma))), floored at 1 (Theorem 1 iteration
// count).
int min_iterations(double epsilon, double gamma);

// Descending immediate-reward mass per class, sampled uniformly inside each
// class; ties break toward the lower index. Used by Order::GoalFirst.
std::vector<int> goal_first_order(const EnvModel& env, const Partition& partition,
                                  std::uint64_t seed, int samples_per_class = 64);

} // namespace lsb
