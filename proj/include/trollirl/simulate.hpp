#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trollirl/types.hpp"

namespace trollirl {

// Ground-truth incentives of a synthetic account. Behavior is the
// soft-optimal policy of the true reward, sampled at the given temperature.
struct AgentSpec {
    ThetaVector theta_true{};
    double temperature = 1.0;
    std::string label = "user";  // "troll" or "user"
    double gamma = 0.9;

    RewardVector true_rewards() const;
};

// Probability of the next state given the agent's action. The response is
// independent of the current state, so the induced MDP dynamics are
// T[s][a][s'] = response[a][s'].
struct EnvironmentModel {
    std::array<std::array<double, kNumStates>, kNumActions> response{};

    TransitionModel induced_transitions() const;
    void validate() const;  // rows must sum to 1
};

// tw and rp draw noticeably more feedback than rt or silence.
EnvironmentModel default_environment();

// Class presets for the synthetic contrast: trolls weight original tweets
// high and incoming feedback low, users the other way around.
AgentSpec default_troll_spec();
AgentSpec default_user_spec();

struct SimulationResult {
    std::vector<ActivityEvent> events;  // what the platform log records
    Trajectory true_steps;              // the full (state, action) sequence
};

// Runs the interaction loop from state NT for `steps` steps. Silence (nt)
// and no-reaction (NT) leave no log line; everything else is emitted with
// strictly increasing timestamps. Deterministic given the seed.
SimulationResult simulate_agent(const std::string& account_id, const AgentSpec& spec,
                                const EnvironmentModel& env, int steps, std::uint64_t seed);

struct PopulationConfig {
    int n_troll = 150;
    int n_user = 750;
    AgentSpec troll_spec = default_troll_spec();
    AgentSpec user_spec = default_user_spec();
    EnvironmentModel env = default_environment();
    int steps = 200;
    std::uint64_t seed = 0;
    double theta_jitter = 0.25;  // per-account spread around the class spec
};

struct PopulationResult {
    std::vector<ActivityEvent> events;                        // label carried on first event
    std::vector<std::pair<std::string, std::string>> labels;  // (account_id, label)
};

// Simulates independent agents with per-account seeds derived from the
// master seed and per-account theta jittered around the class spec.
PopulationResult generate_population(const PopulationConfig& cfg);

}  // namespace trollirl
