#pragma once

#include <cstdint>
#include <vector>

#include "trollirl/types.hpp"

namespace trollirl {

using PolicyMatrix = std::array<std::array<double, kNumActions>, kNumStates>;
using QMatrix = std::array<std::array<double, kNumActions>, kNumStates>;
using StateDistribution = std::array<double, kNumStates>;

struct IrlConfig {
    double gamma = 0.9;
    double learning_rate = 0.05;
    int epochs = 400;
    double vi_tolerance = 1e-6;
    int vi_max_iterations = 10000;
    int horizon = 0;  // 0 = use the trajectory length
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

struct SoftValueIterationResult {
    PolicyMatrix policy{};  // pi[s][a] = exp(Q(s,a) - V(s))
    QMatrix q{};
    StateDistribution v{};
    int iterations = 0;
};

// Fixed point of V(s) = logsumexp_a [ r(s,a) + gamma * sum_s' T(s,a,s') V(s') ],
// iterated until max-abs change in V drops below tol. Throws NumericalError
// with the residual if the cap is hit first. Optional warm start for V.
SoftValueIterationResult soft_value_iteration(const TransitionModel& T, const RewardVector& r,
                                              double gamma, double tol, int max_iterations = 10000,
                                              const StateDistribution* v_init = nullptr);

// Boltzmann policy over q rows at the given temperature.
PolicyMatrix policy_from_q(const QMatrix& q, double temperature);

// Forward recursion d_{t+1}(s') = sum_{s,a} d_t(s) pi[s][a] T(s,a,s'),
// accumulating d_t(s) * pi[s][a] per pair for t < horizon. The raw
// accumulation sums to horizon.
RewardVector expected_visitation(const TransitionModel& T, const PolicyMatrix& pi,
                                 const StateDistribution& rho0, int horizon);

// Same recursion with gamma^t weights, accumulated until the geometric tail
// is negligible (or max_steps). Exact gradient of rho0 . V_soft wrt r.
RewardVector discounted_visitation(const TransitionModel& T, const PolicyMatrix& pi,
                                   const StateDistribution& rho0, double gamma,
                                   int max_steps = 1 << 20, double tail_tol = 1e-14);

// Raw per-pair step counts of the trajectory.
RewardVector empirical_counts(const Trajectory& traj);

// Indicator of the first step's state.
StateDistribution initial_distribution(const Trajectory& traj);

// Discounted MaxEnt surrogate L(r) = sum_t gamma^t r(pair_t) - V_soft(s0).
// Returns L and, when grad_out is non-null, its exact gradient wrt r:
// grad[p] = sum_t gamma^t [pair_t = p] - discounted visitation of p.
double maxent_surrogate(const TransitionModel& T, const Trajectory& traj, const RewardVector& r,
                        double gamma, double vi_tol = 1e-10, int vi_max_iterations = 100000,
                        RewardVector* grad_out = nullptr);

struct MaxentResult {
    RewardVector rewards{};
    ThetaVector theta{};
    int epochs_run = 0;
};

// Maximum-entropy IRL with the linear reward r = theta^T f. Gradient ascent
// from theta = 0; each epoch solves the soft MDP at the current reward and
// moves theta along f * (empirical - expected) visitation, scaled to a
// per-step expectation difference. Deterministic.
MaxentResult maxent_irl(const FeatureMatrix& f, const TransitionModel& T, const Trajectory& traj,
                        const IrlConfig& cfg);

// Small fully-connected reward approximator: one 5-feature column in, one
// scalar reward out. Parameters are stored flat, layer by layer (weights
// then biases).
class RewardNet {
public:
    RewardNet(std::vector<int> hidden_sizes, std::uint64_t seed, double init_scale = 0.1);

    double reward(const FeatureVector& x) const;
    RewardVector rewards(const FeatureMatrix& f) const;

    // dL/dparams for a loss with per-pair signal dL/dr[p].
    std::vector<double> backprop(const FeatureMatrix& f, const RewardVector& signal) const;

    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }
    const std::vector<int>& layer_sizes() const { return sizes_; }

private:
    std::vector<int> sizes_;  // [5, hidden..., 1]
    std::vector<double> params_;
};

// MaxEnt IRL with the nonlinear reward approximator in place of theta^T f,
// trained on the same visitation-difference signal. Deterministic given
// cfg.seed.
RewardVector deep_maxent_irl(const FeatureMatrix& f, const TransitionModel& T,
                             const Trajectory& traj, const IrlConfig& cfg,
                             const std::vector<int>& hidden_sizes = {8});

}  // namespace trollirl
