#pragma once

#include <cstdint>
#include <vector>

#include "lsb/features.hpp"
#include "lsb/skill_mdp.hpp"

namespace lsb {

// State of the modified regular-gradient actor-critic: critic weights omega
// over phi(s,a), actor weights theta over zeta(s,a), fast rate alpha for the
// critic and slow rate beta_rate < alpha for the actor.
struct ActorCriticState {
    std::vector<double> omega;
    std::vector<double> theta;
    double alpha = 0.1;
    double beta_rate = 0.02;
};

struct AcTransition {
    State s;
    int action = 0;
    State next_state;
    double reward = 0.0;
    bool next_is_terminal = false;
};

// One update:
//   Vnew = r + gamma * sum_a' pi(a'|s') w.phi(s',a')   (just r at terminal)
//   Vold = w.phi(s,a);  delta = Vnew - Vold
//   w   += alpha * delta * phi(s,a)
//   psi  = zeta(s,a) - sum_a' pi(a'|s) zeta(s,a')
//   th  += beta * delta * psi
ActorCriticState actor_critic_step(const ActorCriticState& ac, const AcTransition& tr,
                                   double gamma, const FeatureMap& critic_features,
                                   const FeatureMap& actor_features);

// Compatible features psi_{s,a} for the current theta.
std::vector<double> compatible_features(const std::vector<double>& theta,
                                        const FeatureMap& actor_features, const State& s,
                                        int action, int action_count);

struct ActorCriticOptions {
    int episodes = 500;
    int max_steps = 200;
    double alpha = 0.1;
    double beta_ratio = 0.2; // beta = beta_ratio * alpha
};

// Runs seeded skill-MDP episodes from uniform class starts, applying
// actor_critic_step per transition; returns the final theta.
std::vector<double> train_skill_actor_critic(const SkillMdp& skill_mdp,
                                             const FeatureMap& critic_features,
                                             const FeatureMap& actor_features,
                                             const std::vector<double>& init_theta,
                                             const ActorCriticOptions& options,
                                             std::uint64_t seed);

struct UcbRpsOptions {
    int n_candidates = 16;
    int total_rollouts = 160;
    int horizon = 200;
    double exploration_c = 1.4142135623730951; // sqrt(2)
    double candidate_sigma = 1.0;
};

struct BanditArm {
    std::vector<double> theta_candidate;
    int pulls = 0;
    double mean_return = 0.0;
};

// UCB Random Policy Search: Gaussian candidate thetas, one warm-up rollout
// each, then UCB1 allocation of the remaining budget; returns the candidate
// with the highest empirical mean return from uniform class starts.
std::vector<double> ucb_rps_solve(const SkillMdp& skill_mdp, const FeatureMap& actor_features,
                                  const UcbRpsOptions& options, std::uint64_t seed,
                                  std::vector<BanditArm>* arms_out = nullptr);

} // namespace lsb
