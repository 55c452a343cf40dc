#include "lsb/skill_learners.hpp"

#include <cmath>
#include <stdexcept>

#include "lsb/skills.hpp"

namespace lsb {

namespace {

double dot_sparse(const std::vector<double>& w, const std::vector<std::size_t>& idx,
                  const std::vector<double>& val) {
    double z = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) z += w[idx[k]] * val[k];
    return z;
}

void axpy_sparse(std::vector<double>& w, double scale, const std::vector<std::size_t>& idx,
                 const std::vector<double>& val) {
    for (std::size_t k = 0; k < idx.size(); ++k) w[idx[k]] += scale * val[k];
}

} // namespace

std::vector<double> compatible_features(const std::vector<double>& theta,
                                        const FeatureMap& actor_features, const State& s,
                                        int action, int action_count) {
    std::vector<double> psi(actor_features.output_dim(), 0.0);
    std::vector<std::size_t> idx;
    std::vector<double> val;
    actor_features.evaluate_sparse(s, action, idx, val);
    axpy_sparse(psi, 1.0, idx, val);
    std::vector<double> probs = softmax_action_probs(theta, actor_features, s, action_count);
    for (int a = 0; a < action_count; ++a) {
        actor_features.evaluate_sparse(s, a, idx, val);
        axpy_sparse(psi, -probs[a], idx, val);
    }
    return psi;
}

ActorCriticState actor_critic_step(const ActorCriticState& ac, const AcTransition& tr,
                                   double gamma, const FeatureMap& critic_features,
                                   const FeatureMap& actor_features) {
    if (!(ac.beta_rate < ac.alpha))
        throw std::invalid_argument("actor rate must be slower than critic rate");
    const int action_count = critic_features.action_count();
    std::vector<std::size_t> idx;
    std::vector<double> val;

    double v_new = tr.reward;
    if (!tr.next_is_terminal) {
        std::vector<double> probs_next =
            softmax_action_probs(ac.theta, actor_features, tr.next_state, action_count);
        double bootstrap = 0.0;
        for (int a = 0; a < action_count; ++a) {
            critic_features.evaluate_sparse(tr.next_state, a, idx, val);
            bootstrap += probs_next[a] * dot_sparse(ac.omega, idx, val);
        }
        v_new += gamma * bootstrap;
    }
    critic_features.evaluate_sparse(tr.s, tr.action, idx, val);
    double v_old = dot_sparse(ac.omega, idx, val);
    double delta = v_new - v_old;
    if (!std::isfinite(delta) || std::abs(delta) > 1e6) throw std::runtime_error("diverged");

    ActorCriticState out = ac;
    axpy_sparse(out.omega, ac.alpha * delta, idx, val);
    std::vector<double> psi =
        compatible_features(ac.theta, actor_features, tr.s, tr.action, action_count);
    for (std::size_t k = 0; k < psi.size(); ++k)
        out.theta[k] += ac.beta_rate * delta * psi[k];
    return out;
}

std::vector<double> train_skill_actor_critic(const SkillMdp& skill_mdp,
                                             const FeatureMap& critic_features,
                                             const FeatureMap& actor_features,
                                             const std::vector<double>& init_theta,
                                             const ActorCriticOptions& options,
                                             std::uint64_t seed) {
    if (options.episodes < 1) throw std::invalid_argument("episodes must be >= 1");
    ActorCriticState ac;
    ac.omega.assign(critic_features.output_dim(), 0.0);
    ac.theta = init_theta;
    ac.alpha = options.alpha;
    ac.beta_rate = options.beta_ratio * options.alpha;
    const double gamma = skill_mdp.gamma();
    const int action_count = skill_mdp.action_count();
    for (int ep = 0; ep < options.episodes; ++ep) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(ep)));
        State s = skill_mdp.sample_start(rng);
        for (int t = 0; t < options.max_steps; ++t) {
            std::vector<double> probs =
                softmax_action_probs(ac.theta, actor_features, s, action_count);
            int a = sample_from_distribution(probs, rng);
            StepResult res = skill_mdp.step(s, a, rng);
            ac = actor_critic_step(ac, {s, a, res.next_state, res.reward, res.done}, gamma,
                                   critic_features, actor_features);
            if (res.done) break;
            s = res.next_state;
        }
    }
    return ac.theta;
}

namespace {

double skill_mdp_rollout_return(const SkillMdp& skill_mdp, const FeatureMap& actor_features,
                                const std::vector<double>& theta, int horizon, Rng& rng) {
    State s = skill_mdp.sample_start(rng);
    double total = 0.0, w = 1.0;
    const double gamma = skill_mdp.gamma();
    for (int t = 0; t < horizon; ++t) {
        std::vector<double> probs =
            softmax_action_probs(theta, actor_features, s, skill_mdp.action_count());
        int a = sample_from_distribution(probs, rng);
        StepResult res = skill_mdp.step(s, a, rng);
        total += w * res.reward;
        w *= gamma;
        if (res.done) break;
        s = res.next_state;
    }
    return total;
}

} // namespace

std::vector<double> ucb_rps_solve(const SkillMdp& skill_mdp, const FeatureMap& actor_features,
                                  const UcbRpsOptions& options, std::uint64_t seed,
                                  std::vector<BanditArm>* arms_out) {
    if (options.n_candidates < 2) throw std::invalid_argument("need at least 2 candidates");
    if (options.total_rollouts < options.n_candidates)
        throw std::invalid_argument("need at least one rollout per candidate");
    Rng cand_rng(derive_seed(seed, 0x75636272707343ULL));
    std::vector<BanditArm> arms(static_cast<std::size_t>(options.n_candidates));
    for (auto& arm : arms) {
        arm.theta_candidate.resize(actor_features.output_dim());
        for (double& v : arm.theta_candidate) v = cand_rng.normal(0.0, options.candidate_sigma);
    }
    int t = 0;
    auto pull = [&](BanditArm& arm) {
        Rng rng(derive_seed(seed, 1000 + static_cast<std::uint64_t>(t)));
        double g = skill_mdp_rollout_return(skill_mdp, actor_features, arm.theta_candidate,
                                            options.horizon, rng);
        arm.mean_return = (arm.mean_return * arm.pulls + g) / (arm.pulls + 1);
        arm.pulls += 1;
        ++t;
    };
    for (auto& arm : arms) pull(arm); // warm-up
    while (t < options.total_rollouts) {
        std::size_t best = 0;
        double best_score = -1e300;
        for (std::size_t j = 0; j < arms.size(); ++j) {
            double score = arms[j].mean_return +
                           options.exploration_c * std::sqrt(std::log(static_cast<double>(t)) /
                                                             arms[j].pulls);
            if (score > best_score) {
                best_score = score;
                best = j;
            }
        }
        pull(arms[best]);
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < arms.size(); ++j)
        if (arms[j].mean_return > arms[best].mean_return) best = j;
    if (arms_out) *arms_out = arms;
    return arms[best].theta_candidate;
}

} // namespace lsb
