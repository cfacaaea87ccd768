#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trollirl/activity.hpp"
#include "trollirl/analysis.hpp"
#include "trollirl/classifier.hpp"
#include "trollirl/maxent.hpp"
#include "trollirl/pipeline.hpp"
#include "trollirl/simulate.hpp"

namespace py = pybind11;
using namespace trollirl;

namespace {

IrlConfig config_from_kwargs(double gamma, double learning_rate, int epochs, double vi_tolerance,
                             int horizon, std::uint64_t seed) {
    IrlConfig cfg;
    cfg.gamma = gamma;
    cfg.learning_rate = learning_rate;
    cfg.epochs = epochs;
    cfg.vi_tolerance = vi_tolerance;
    cfg.horizon = horizon;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(trollirl, m) {
    m.doc() = "Behavioral reward inference over activity logs: maximum-entropy IRL on a "
              "3-state/4-action interaction MDP, AdaBoost troll/user classification, and a "
              "synthetic-agent simulator.";

    py::enum_<State>(m, "State")
        .value("RT", State::RT)
        .value("RP", State::RP)
        .value("NT", State::NT);
    py::enum_<Action>(m, "Action")
        .value("tw", Action::tw)
        .value("rt", Action::rt)
        .value("rp", Action::rp)
        .value("nt", Action::nt);

    py::class_<ActivityEvent>(m, "ActivityEvent")
        .def(py::init([](const std::string& account_id, std::int64_t ts, const std::string& kind,
                         const std::string& label) {
                 return ActivityEvent{account_id, ts, event_kind_from_string(kind), label};
             }),
             py::arg("account_id"), py::arg("ts"), py::arg("kind"), py::arg("label") = "")
        .def_readwrite("account_id", &ActivityEvent::account_id)
        .def_readwrite("ts", &ActivityEvent::ts)
        .def_property(
            "kind", [](const ActivityEvent& e) { return std::string(to_string(e.kind)); },
            [](ActivityEvent& e, const std::string& k) { e.kind = event_kind_from_string(k); })
        .def_readwrite("label", &ActivityEvent::label)
        .def("__repr__", [](const ActivityEvent& e) {
            return "ActivityEvent(" + e.account_id + ", " + std::to_string(e.ts) + ", " +
                   to_string(e.kind) + ")";
        });

    py::class_<Step>(m, "Step")
        .def(py::init<State, Action>())
        .def_readwrite("state", &Step::state)
        .def_readwrite("action", &Step::action)
        .def("__repr__", [](const Step& s) {
            return std::string("(") + to_code(s.state) + ", " + to_code(s.action) + ")";
        });

    py::class_<Trajectory>(m, "Trajectory")
        .def(py::init<>())
        .def_readwrite("account_id", &Trajectory::account_id)
        .def_readwrite("steps", &Trajectory::steps)
        .def("__len__", [](const Trajectory& t) { return t.steps.size(); });

    py::class_<TransitionModel>(m, "TransitionModel")
        .def(py::init<>())
        .def_readwrite("probs", &TransitionModel::probs)
        .def_readwrite("counts", &TransitionModel::counts);

    m.def("pair_index", &pair_index, py::arg("state"), py::arg("action"));
    m.def("pair_code", &pair_code, py::arg("index"));
    m.def("encode_features", &encode_features, py::arg("state"), py::arg("action"));
    m.def("feature_matrix", [] { return feature_matrix(); });

    m.def(
        "parse_activity_log",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_activity_log(in);
        },
        py::arg("text"), "Parse JSONL activity records from a string.");
    m.def("parse_activity_log_file", &parse_activity_log_file, py::arg("path"));
    m.def("filter_accounts", &filter_accounts, py::arg("events"), py::arg("k"));
    m.def("build_trajectory", &build_trajectory, py::arg("account_id"), py::arg("events"));
    m.def("estimate_transitions", &estimate_transitions, py::arg("trajectory"));

    m.def(
        "soft_value_iteration",
        [](const TransitionModel& T, const RewardVector& r, double gamma, double tol,
           int max_iterations) {
            const auto res = soft_value_iteration(T, r, gamma, tol, max_iterations);
            return py::make_tuple(res.policy, res.q, res.v, res.iterations);
        },
        py::arg("transitions"), py::arg("rewards"), py::arg("gamma"), py::arg("tol") = 1e-6,
        py::arg("max_iterations") = 10000,
        "Returns (policy, q, v, iterations) of the converged soft MDP.");
    m.def("expected_visitation", &expected_visitation, py::arg("transitions"), py::arg("policy"),
          py::arg("rho0"), py::arg("horizon"));
    m.def("empirical_counts", &empirical_counts, py::arg("trajectory"));
    m.def("initial_distribution", &initial_distribution, py::arg("trajectory"));

    m.def(
        "maxent_irl",
        [](const TransitionModel& T, const Trajectory& traj, double gamma, double learning_rate,
           int epochs, double vi_tolerance, int horizon, std::uint64_t seed) {
            const auto res = maxent_irl(feature_matrix(), T, traj,
                                        config_from_kwargs(gamma, learning_rate, epochs,
                                                           vi_tolerance, horizon, seed));
            return py::make_tuple(res.rewards, res.theta);
        },
        py::arg("transitions"), py::arg("trajectory"), py::arg("gamma") = 0.9,
        py::arg("learning_rate") = 0.05, py::arg("epochs") = 400, py::arg("vi_tolerance") = 1e-6,
        py::arg("horizon") = 0, py::arg("seed") = 0,
        "Linear maximum-entropy IRL; returns (rewards, theta).");
    m.def(
        "deep_maxent_irl",
        [](const TransitionModel& T, const Trajectory& traj, const std::vector<int>& hidden,
           double gamma, double learning_rate, int epochs, double vi_tolerance, int horizon,
           std::uint64_t seed) {
            return deep_maxent_irl(feature_matrix(), T, traj,
                                   config_from_kwargs(gamma, learning_rate, epochs, vi_tolerance,
                                                      horizon, seed),
                                   hidden);
        },
        py::arg("transitions"), py::arg("trajectory"), py::arg("hidden") = std::vector<int>{8},
        py::arg("gamma") = 0.9, py::arg("learning_rate") = 0.05, py::arg("epochs") = 400,
        py::arg("vi_tolerance") = 1e-6, py::arg("horizon") = 0, py::arg("seed") = 0,
        "Maximum-entropy IRL through a small reward network; returns the 12 rewards.");

    py::class_<Stump>(m, "Stump")
        .def_readonly("feature", &Stump::feature)
        .def_readonly("threshold", &Stump::threshold)
        .def_readonly("polarity", &Stump::polarity)
        .def_readonly("stage_weight", &Stump::stage_weight);
    py::class_<BoostModel>(m, "BoostModel").def_readonly("stumps", &BoostModel::stumps);
    py::class_<LabeledSample>(m, "LabeledSample")
        .def(py::init([](const std::string& id, const std::array<double, kNumPairs>& features,
                         int label) {
                 return LabeledSample{id, features, label};
             }),
             py::arg("account_id"), py::arg("features"), py::arg("label"))
        .def_readwrite("account_id", &LabeledSample::account_id)
        .def_readwrite("features", &LabeledSample::features)
        .def_readwrite("label", &LabeledSample::label);

    py::class_<Metrics>(m, "Metrics")
        .def_readonly("auc", &Metrics::auc)
        .def_readonly("accuracy", &Metrics::accuracy)
        .def_readonly("tpr", &Metrics::tpr)
        .def_readonly("tnr", &Metrics::tnr)
        .def_readonly("precision", &Metrics::precision)
        .def_readonly("recall", &Metrics::recall)
        .def_readonly("f1", &Metrics::f1);
    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("aggregate", &EvalReport::aggregate)
        .def_readonly("per_fold", &EvalReport::per_fold)
        .def_readonly("feature_importance", &EvalReport::feature_importance);

    m.def(
        "train_adaboost",
        [](const std::vector<std::array<double, kNumPairs>>& X, const std::vector<int>& y,
           int rounds, double lr) { return train_adaboost(X, y, rounds, lr); },
        py::arg("X"), py::arg("y"), py::arg("rounds") = 500, py::arg("lr") = 0.05);
    m.def("predict_score", &predict_score, py::arg("model"), py::arg("x"));
    m.def("predict", &predict, py::arg("model"), py::arg("x"), py::arg("threshold") = 0.0);
    m.def("roc_auc", &roc_auc, py::arg("scores"), py::arg("labels"));
    m.def("feature_importance", &feature_importance, py::arg("model"));
    m.def("undersample_splits", &undersample_splits, py::arg("samples"), py::arg("parts"),
          py::arg("seed"));
    m.def(
        "cross_validate",
        [](const std::vector<LabeledSample>& samples, int folds, int rounds, double lr,
           std::uint64_t seed, bool standardize) {
            CrossValidationConfig cfg;
            cfg.folds = folds;
            cfg.rounds = rounds;
            cfg.lr = lr;
            cfg.seed = seed;
            cfg.standardize = standardize;
            return cross_validate(samples, cfg);
        },
        py::arg("samples"), py::arg("folds") = 10, py::arg("rounds") = 500, py::arg("lr") = 0.05,
        py::arg("seed") = 0, py::arg("standardize") = true);

    m.def(
        "ks_two_sample",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            const KsResult res = ks_two_sample(a, b);
            return py::make_tuple(res.statistic, res.p_value);
        },
        py::arg("a"), py::arg("b"), "Returns (statistic, p_value).");
    m.def(
        "recover_theta",
        [](const RewardVector& r) { return recover_theta(feature_matrix(), r); }, py::arg("rewards"),
        "Invert the linear reward map for the canonical feature matrix.");

    py::class_<AgentSpec>(m, "AgentSpec")
        .def(py::init<>())
        .def_readwrite("theta_true", &AgentSpec::theta_true)
        .def_readwrite("temperature", &AgentSpec::temperature)
        .def_readwrite("label", &AgentSpec::label)
        .def_readwrite("gamma", &AgentSpec::gamma);
    py::class_<EnvironmentModel>(m, "EnvironmentModel")
        .def(py::init<>())
        .def_readwrite("response", &EnvironmentModel::response);
    m.def("default_environment", &default_environment);
    m.def("default_troll_spec", &default_troll_spec);
    m.def("default_user_spec", &default_user_spec);
    m.def(
        "simulate_agent",
        [](const std::string& id, const AgentSpec& spec, const EnvironmentModel& env, int steps,
           std::uint64_t seed) {
            const auto res = simulate_agent(id, spec, env, steps, seed);
            return py::make_tuple(res.events, res.true_steps);
        },
        py::arg("account_id"), py::arg("spec"), py::arg("env"), py::arg("steps"), py::arg("seed"),
        "Returns (events, true_trajectory).");
    m.def(
        "generate_population",
        [](int n_troll, int n_user, int steps, std::uint64_t seed, double theta_jitter,
           double temperature) {
            PopulationConfig cfg;
            cfg.n_troll = n_troll;
            cfg.n_user = n_user;
            cfg.steps = steps;
            cfg.seed = seed;
            cfg.theta_jitter = theta_jitter;
            cfg.troll_spec.temperature = temperature;
            cfg.user_spec.temperature = temperature;
            const auto res = generate_population(cfg);
            return py::make_tuple(res.events, res.labels);
        },
        py::arg("n_troll"), py::arg("n_user"), py::arg("steps") = 200, py::arg("seed") = 0,
        py::arg("theta_jitter") = 0.25, py::arg("temperature") = 1.0,
        "Returns (events, labels) for a synthetic two-class population.");
}
