#include "trollirl/maxent.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "trollirl/errors.hpp"
#include "trollirl/rng.hpp"

namespace trollirl {

namespace {

double logsumexp_row(const std::array<double, kNumActions>& q) {
    double m = q[0];
    for (double v : q) m = std::max(m, v);
    double s = 0.0;
    for (double v : q) s += std::exp(v - m);
    return m + std::log(s);
}

StateDistribution indicator(State s) {
    StateDistribution d{};
    d[static_cast<int>(s)] = 1.0;
    return d;
}

void check_distribution(const StateDistribution& rho0) {
    double total = 0.0;
    for (double v : rho0) {
        if (v < 0.0) throw std::invalid_argument("negative initial-state probability");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("initial-state distribution must sum to 1");
}

StateDistribution push_forward(const TransitionModel& T, const PolicyMatrix& pi,
                               const StateDistribution& d) {
    StateDistribution next{};
    for (int s = 0; s < kNumStates; ++s) {
        if (d[s] == 0.0) continue;
        for (int a = 0; a < kNumActions; ++a) {
            const double mass = d[s] * pi[s][a];
            for (int s2 = 0; s2 < kNumStates; ++s2) next[s2] += mass * T.probs[s][a][s2];
        }
    }
    return next;
}

}  // namespace

void IrlConfig::validate() const {
    if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("gamma must be in [0, 1)");
    if (learning_rate <= 0.0) throw ConfigError("learning_rate must be positive");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (vi_tolerance <= 0.0) throw ConfigError("vi_tolerance must be positive");
    if (vi_max_iterations < 1) throw ConfigError("vi_max_iterations must be >= 1");
    if (horizon < 0) throw ConfigError("horizon must be >= 0 (0 = trajectory length)");
}

SoftValueIterationResult soft_value_iteration(const TransitionModel& T, const RewardVector& r,
                                              double gamma, double tol, int max_iterations,
                                              const StateDistribution* v_init) {
    if (gamma < 0.0 || gamma >= 1.0) throw std::invalid_argument("gamma must be in [0, 1)");
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");

    SoftValueIterationResult res;
    StateDistribution v = v_init ? *v_init : StateDistribution{};
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iterations; ++it) {
        QMatrix q{};
        StateDistribution v_new{};
        for (int s = 0; s < kNumStates; ++s) {
            for (int a = 0; a < kNumActions; ++a) {
                double ev = 0.0;
                for (int s2 = 0; s2 < kNumStates; ++s2) ev += T.probs[s][a][s2] * v[s2];
                q[s][a] = r[pair_index(static_cast<State>(s), static_cast<Action>(a))] + gamma * ev;
            }
            v_new[s] = logsumexp_row(q[s]);
        }
        residual = 0.0;
        for (int s = 0; s < kNumStates; ++s) residual = std::max(residual, std::abs(v_new[s] - v[s]));
        v = v_new;
        res.q = q;
        res.iterations = it;
        if (residual < tol) {
            res.v = v;
            for (int s = 0; s < kNumStates; ++s) {
                const double lse = logsumexp_row(res.q[s]);
                for (int a = 0; a < kNumActions; ++a) res.policy[s][a] = std::exp(res.q[s][a] - lse);
            }
            return res;
        }
    }
    throw NumericalError("soft value iteration did not converge after " +
                         std::to_string(max_iterations) + " iterations (residual " +
                         std::to_string(residual) + ")");
}

PolicyMatrix policy_from_q(const QMatrix& q, double temperature) {
    if (temperature <= 0.0) throw std::invalid_argument("temperature must be positive");
    PolicyMatrix pi{};
    for (int s = 0; s < kNumStates; ++s) {
        std::array<double, kNumActions> scaled{};
        for (int a = 0; a < kNumActions; ++a) scaled[a] = q[s][a] / temperature;
        const double lse = logsumexp_row(scaled);
        for (int a = 0; a < kNumActions; ++a) pi[s][a] = std::exp(scaled[a] - lse);
    }
    return pi;
}

RewardVector expected_visitation(const TransitionModel& T, const PolicyMatrix& pi,
                                 const StateDistribution& rho0, int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    check_distribution(rho0);
    RewardVector visits{};
    StateDistribution d = rho0;
    for (int t = 0; t < horizon; ++t) {
        for (int s = 0; s < kNumStates; ++s)
            for (int a = 0; a < kNumActions; ++a)
                visits[pair_index(static_cast<State>(s), static_cast<Action>(a))] += d[s] * pi[s][a];
        if (t + 1 < horizon) d = push_forward(T, pi, d);
    }
    return visits;
}

RewardVector discounted_visitation(const TransitionModel& T, const PolicyMatrix& pi,
                                   const StateDistribution& rho0, double gamma, int max_steps,
                                   double tail_tol) {
    if (gamma < 0.0 || gamma >= 1.0) throw std::invalid_argument("gamma must be in [0, 1)");
    check_distribution(rho0);
    RewardVector visits{};
    StateDistribution d = rho0;
    double w = 1.0;
    const double tail_scale = 1.0 / (1.0 - gamma);
    for (int t = 0; t < max_steps && w * tail_scale > tail_tol; ++t) {
        for (int s = 0; s < kNumStates; ++s)
            for (int a = 0; a < kNumActions; ++a)
                visits[pair_index(static_cast<State>(s), static_cast<Action>(a))] +=
                    w * d[s] * pi[s][a];
        d = push_forward(T, pi, d);
        w *= gamma;
    }
    return visits;
}

RewardVector empirical_counts(const Trajectory& traj) {
    if (traj.steps.empty()) throw DataError("empty trajectory");
    RewardVector counts{};
    for (const Step& st : traj.steps) counts[pair_index(st.state, st.action)] += 1.0;
    return counts;
}

StateDistribution initial_distribution(const Trajectory& traj) {
    if (traj.steps.empty()) throw DataError("empty trajectory");
    return indicator(traj.steps.front().state);
}

double maxent_surrogate(const TransitionModel& T, const Trajectory& traj, const RewardVector& r,
                        double gamma, double vi_tol, int vi_max_iterations,
                        RewardVector* grad_out) {
    if (traj.steps.empty()) throw DataError("empty trajectory");
    const SoftValueIterationResult svi =
        soft_value_iteration(T, r, gamma, vi_tol, vi_max_iterations);

    double demo_term = 0.0;
    RewardVector demo_counts{};
    double w = 1.0;
    for (const Step& st : traj.steps) {
        demo_term += w * r[pair_index(st.state, st.action)];
        demo_counts[pair_index(st.state, st.action)] += w;
        w *= gamma;
    }
    const State s0 = traj.steps.front().state;
    const double value = demo_term - svi.v[static_cast<int>(s0)];

    if (grad_out) {
        const RewardVector model = discounted_visitation(T, svi.policy, indicator(s0), gamma);
        for (int p = 0; p < kNumPairs; ++p) (*grad_out)[p] = demo_counts[p] - model[p];
    }
    return value;
}

MaxentResult maxent_irl(const FeatureMatrix& f, const TransitionModel& T, const Trajectory& traj,
                        const IrlConfig& cfg) {
    cfg.validate();
    if (traj.steps.empty()) throw DataError("empty trajectory");

    const int length = static_cast<int>(traj.steps.size());
    const int horizon = cfg.horizon > 0 ? cfg.horizon : length;
    const StateDistribution rho0 = initial_distribution(traj);

    // Empirical pair counts scaled so their total mass equals the horizon,
    // commensurate with the expected visitation.
    RewardVector demo = empirical_counts(traj);
    for (double& c : demo) c *= static_cast<double>(horizon) / length;

    MaxentResult res;
    StateDistribution v_warm{};
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const RewardVector r = rewards_from_theta(res.theta, f);
        const SoftValueIterationResult svi = soft_value_iteration(
            T, r, cfg.gamma, cfg.vi_tolerance, cfg.vi_max_iterations, &v_warm);
        v_warm = svi.v;
        const RewardVector visits = expected_visitation(T, svi.policy, rho0, horizon);
        for (int i = 0; i < kNumFeatures; ++i) {
            double g = 0.0;
            for (int p = 0; p < kNumPairs; ++p) g += f[i][p] * (demo[p] - visits[p]);
            g /= horizon;  // per-step expectation difference
            if (!std::isfinite(g)) throw NumericalError("non-finite gradient in maxent_irl");
            res.theta[i] += cfg.learning_rate * g;
        }
        res.epochs_run = epoch + 1;
    }
    res.rewards = rewards_from_theta(res.theta, f);
    return res;
}

RewardNet::RewardNet(std::vector<int> hidden_sizes, std::uint64_t seed, double init_scale) {
    if (hidden_sizes.empty()) throw std::invalid_argument("need at least one hidden layer");
    sizes_.push_back(kNumFeatures);
    for (int h : hidden_sizes) {
        if (h < 1) throw std::invalid_argument("hidden layer size must be >= 1");
        sizes_.push_back(h);
    }
    sizes_.push_back(1);

    std::size_t n_params = 0;
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l)
        n_params += static_cast<std::size_t>(sizes_[l + 1]) * sizes_[l] + sizes_[l + 1];
    params_.resize(n_params);
    Rng rng(seed);
    for (double& p : params_) p = rng.uniform(-init_scale, init_scale);
}

namespace {

// Forward pass through one column; activations[l] holds the layer-l outputs.
void net_forward(const std::vector<int>& sizes, const std::vector<double>& params,
                 const double* input, std::vector<std::vector<double>>& activations) {
    activations.assign(sizes.size(), {});
    activations[0].assign(input, input + sizes[0]);
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int in = sizes[l], out = sizes[l + 1];
        const bool last = l + 2 == sizes.size();
        activations[l + 1].resize(out);
        for (int j = 0; j < out; ++j) {
            double z = params[offset + static_cast<std::size_t>(in) * out + j];  // bias
            for (int i = 0; i < in; ++i)
                z += params[offset + static_cast<std::size_t>(j) * in + i] * activations[l][i];
            activations[l + 1][j] = last ? z : std::tanh(z);
        }
        offset += static_cast<std::size_t>(in) * out + out;
    }
}

}  // namespace

double RewardNet::reward(const FeatureVector& x) const {
    std::vector<std::vector<double>> acts;
    net_forward(sizes_, params_, x.data(), acts);
    return acts.back()[0];
}

RewardVector RewardNet::rewards(const FeatureMatrix& f) const {
    RewardVector r{};
    for (int p = 0; p < kNumPairs; ++p) {
        FeatureVector col{};
        for (int i = 0; i < kNumFeatures; ++i) col[i] = f[i][p];
        r[p] = reward(col);
    }
    return r;
}

std::vector<double> RewardNet::backprop(const FeatureMatrix& f, const RewardVector& signal) const {
    std::vector<double> grad(params_.size(), 0.0);
    std::vector<std::vector<double>> acts;
    for (int p = 0; p < kNumPairs; ++p) {
        if (signal[p] == 0.0) continue;
        FeatureVector col{};
        for (int i = 0; i < kNumFeatures; ++i) col[i] = f[i][p];
        net_forward(sizes_, params_, col.data(), acts);

        // delta[l] = dL/dz at layer l (output layer is linear).
        std::vector<std::vector<double>> delta(sizes_.size());
        delta.back() = {signal[p]};
        std::size_t layer_offset = params_.size();
        for (std::size_t l = sizes_.size() - 1; l-- > 0;) {
            const int in = sizes_[l], out = sizes_[l + 1];
            layer_offset -= static_cast<std::size_t>(in) * out + out;
            for (int j = 0; j < out; ++j) {
                const double dj = delta[l + 1][j];
                for (int i = 0; i < in; ++i)
                    grad[layer_offset + static_cast<std::size_t>(j) * in + i] += dj * acts[l][i];
                grad[layer_offset + static_cast<std::size_t>(in) * out + j] += dj;
            }
            if (l == 0) break;
            delta[l].assign(in, 0.0);
            for (int i = 0; i < in; ++i) {
                double acc = 0.0;
                for (int j = 0; j < out; ++j)
                    acc += params_[layer_offset + static_cast<std::size_t>(j) * in + i] *
                           delta[l + 1][j];
                // tanh'(z) = 1 - tanh(z)^2, and acts[l][i] is tanh(z)
                delta[l][i] = acc * (1.0 - acts[l][i] * acts[l][i]);
            }
        }
    }
    return grad;
}

RewardVector deep_maxent_irl(const FeatureMatrix& f, const TransitionModel& T,
                             const Trajectory& traj, const IrlConfig& cfg,
                             const std::vector<int>& hidden_sizes) {
    cfg.validate();
    if (traj.steps.empty()) throw DataError("empty trajectory");

    const int length = static_cast<int>(traj.steps.size());
    const int horizon = cfg.horizon > 0 ? cfg.horizon : length;
    const StateDistribution rho0 = initial_distribution(traj);
    RewardVector demo = empirical_counts(traj);
    for (double& c : demo) c *= static_cast<double>(horizon) / length;

    RewardNet net(hidden_sizes, cfg.seed);
    StateDistribution v_warm{};
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const RewardVector r = net.rewards(f);
        const SoftValueIterationResult svi = soft_value_iteration(
            T, r, cfg.gamma, cfg.vi_tolerance, cfg.vi_max_iterations, &v_warm);
        v_warm = svi.v;
        const RewardVector visits = expected_visitation(T, svi.policy, rho0, horizon);
        RewardVector signal{};
        for (int p = 0; p < kNumPairs; ++p) signal[p] = (demo[p] - visits[p]) / horizon;
        const std::vector<double> grad = net.backprop(f, signal);
        for (std::size_t i = 0; i < grad.size(); ++i) {
            if (!std::isfinite(grad[i])) throw NumericalError("non-finite gradient in deep_maxent_irl");
            net.params()[i] += cfg.learning_rate * grad[i];
        }
    }
    return net.rewards(f);
}

}  // namespace trollirl
