#include "trollirl/simulate.hpp"

#include <cmath>
#include <cstdio>

#include "trollirl/errors.hpp"
#include "trollirl/maxent.hpp"
#include "trollirl/rng.hpp"

namespace trollirl {

namespace {

constexpr std::int64_t kBaseTimestamp = 1500000000000;  // arbitrary 2017 epoch ms
constexpr std::int64_t kTickMs = 60000;

EventKind active_kind(Action a) {
    switch (a) {
        case Action::tw: return EventKind::active_tweet;
        case Action::rt: return EventKind::active_retweet;
        case Action::rp: return EventKind::active_reply_or_mention;
        default: throw std::invalid_argument("nt has no event kind");
    }
}

EventKind passive_kind(State s) {
    switch (s) {
        case State::RT: return EventKind::passive_retweet;
        case State::RP: return EventKind::passive_reply_or_mention;
        default: throw std::invalid_argument("NT has no event kind");
    }
}

}  // namespace

RewardVector AgentSpec::true_rewards() const {
    return rewards_from_theta(theta_true, feature_matrix());
}

TransitionModel EnvironmentModel::induced_transitions() const {
    TransitionModel model;
    for (int s = 0; s < kNumStates; ++s)
        for (int a = 0; a < kNumActions; ++a)
            for (int s2 = 0; s2 < kNumStates; ++s2) model.probs[s][a][s2] = response[a][s2];
    return model;
}

void EnvironmentModel::validate() const {
    for (int a = 0; a < kNumActions; ++a) {
        double total = 0.0;
        for (int s2 = 0; s2 < kNumStates; ++s2) {
            if (response[a][s2] < 0.0) throw ConfigError("negative environment response probability");
            total += response[a][s2];
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw ConfigError("environment response rows must sum to 1");
    }
}

EnvironmentModel default_environment() {
    EnvironmentModel env;
    env.response[static_cast<int>(Action::tw)] = {0.35, 0.20, 0.45};
    env.response[static_cast<int>(Action::rt)] = {0.15, 0.15, 0.70};
    env.response[static_cast<int>(Action::rp)] = {0.15, 0.35, 0.50};
    env.response[static_cast<int>(Action::nt)] = {0.10, 0.10, 0.80};
    return env;
}

AgentSpec default_troll_spec() {
    AgentSpec spec;
    spec.theta_true = {0.3, 0.2, 1.4, 1.0, 0.4};  // content spread over feedback
    spec.label = "troll";
    return spec;
}

AgentSpec default_user_spec() {
    AgentSpec spec;
    spec.theta_true = {1.2, 0.9, 0.4, 0.7, 0.6};  // feedback driven
    spec.label = "user";
    return spec;
}

SimulationResult simulate_agent(const std::string& account_id, const AgentSpec& spec,
                                const EnvironmentModel& env, int steps, std::uint64_t seed) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (spec.temperature <= 0.0) throw std::invalid_argument("temperature must be positive");
    env.validate();

    const TransitionModel T = env.induced_transitions();
    const SoftValueIterationResult svi =
        soft_value_iteration(T, spec.true_rewards(), spec.gamma, 1e-10, 200000);
    const PolicyMatrix pi = policy_from_q(svi.q, spec.temperature);

    SimulationResult result;
    result.true_steps.account_id = account_id;
    Rng rng(seed);
    State s = State::NT;
    std::int64_t ts = kBaseTimestamp;
    for (int t = 0; t < steps; ++t) {
        const Action a = static_cast<Action>(rng.categorical(pi[static_cast<int>(s)]));
        result.true_steps.steps.push_back({s, a});
        if (a != Action::nt) {
            result.events.push_back({account_id, ts, active_kind(a), ""});
            ts += kTickMs;
        }
        const State next =
            static_cast<State>(rng.categorical(env.response[static_cast<int>(a)]));
        if (next != State::NT) {
            result.events.push_back({account_id, ts, passive_kind(next), ""});
            ts += kTickMs;
        }
        s = next;
    }
    return result;
}

PopulationResult generate_population(const PopulationConfig& cfg) {
    if (cfg.n_troll < 1 || cfg.n_user < 1)
        throw std::invalid_argument("population needs at least one account per class");
    if (cfg.theta_jitter < 0.0) throw std::invalid_argument("theta_jitter must be >= 0");

    PopulationResult out;
    char buf[32];
    for (int i = 0; i < cfg.n_troll + cfg.n_user; ++i) {
        const bool troll = i < cfg.n_troll;
        const AgentSpec& base = troll ? cfg.troll_spec : cfg.user_spec;
        std::snprintf(buf, sizeof(buf), "%s_%04d", troll ? "troll" : "user",
                      troll ? i : i - cfg.n_troll);
        const std::string id(buf);

        const std::uint64_t account_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
        AgentSpec spec = base;
        Rng jitter_rng(derive_seed(account_seed, 1));
        for (double& th : spec.theta_true) th += cfg.theta_jitter * jitter_rng.normal();

        SimulationResult sim = simulate_agent(id, spec, cfg.env, cfg.steps,
                                              derive_seed(account_seed, 2));
        if (!sim.events.empty()) sim.events.front().label = base.label;
        out.events.insert(out.events.end(), sim.events.begin(), sim.events.end());
        out.labels.emplace_back(id, base.label);
    }
    return out;
}

}  // namespace trollirl
