#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trollirl/errors.hpp"
#include "trollirl/pipeline.hpp"

namespace {

struct CliOverrides {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> irl_variant;
    std::optional<int> k;
    std::optional<std::string> input;
    std::optional<std::string> labels;

    std::optional<int> n_troll, n_user, steps;
    std::optional<double> temperature, theta_jitter;
    std::optional<double> gamma, learning_rate, vi_tolerance;
    std::optional<int> epochs, horizon;
    std::optional<int> rounds, folds, parts;
    std::optional<double> classifier_lr;
    bool no_standardize = false;
    bool dump_trajectories = false;
    std::vector<int> k_values = {5, 10, 15, 20, 25};
};

trollirl::PipelineConfig make_config(const CliOverrides& o) {
    trollirl::PipelineConfig cfg;
    if (o.config_path) cfg = trollirl::load_config(*o.config_path);
    const auto set = [&cfg](const std::string& key, const auto& opt) {
        if (opt) trollirl::apply_config_entry(cfg, key, std::to_string(*opt));
    };
    set("seed", o.seed);
    set("k", o.k);
    set("n_troll", o.n_troll);
    set("n_user", o.n_user);
    set("steps", o.steps);
    set("epochs", o.epochs);
    set("horizon", o.horizon);
    set("rounds", o.rounds);
    set("folds", o.folds);
    set("undersample_parts", o.parts);
    if (o.out_dir) cfg.out_dir = *o.out_dir;
    if (o.input) cfg.input = *o.input;
    if (o.labels) cfg.labels = *o.labels;
    if (o.irl_variant) trollirl::apply_config_entry(cfg, "irl_variant", *o.irl_variant);
    if (o.temperature) cfg.temperature = *o.temperature;
    if (o.theta_jitter) cfg.theta_jitter = *o.theta_jitter;
    if (o.gamma) cfg.irl.gamma = *o.gamma;
    if (o.learning_rate) cfg.irl.learning_rate = *o.learning_rate;
    if (o.vi_tolerance) cfg.irl.vi_tolerance = *o.vi_tolerance;
    if (o.classifier_lr) cfg.classifier_lr = *o.classifier_lr;
    if (o.no_standardize) cfg.standardize = false;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Behavioral reward inference over activity logs and troll/user classification"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOverrides o;
    app.add_option("--config", o.config_path, "key = value config file");
    app.add_option("--seed", o.seed, "master seed");
    app.add_option("--out", o.out_dir, "output directory (created if missing)");
    app.add_option("--irl", o.irl_variant, "IRL variant: linear or deep")
        ->check(CLI::IsMember({"linear", "deep"}));
    app.add_option("--k", o.k, "minimum active and passive events per account");

    CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic activity log");
    simulate->add_option("--n-troll", o.n_troll, "troll accounts");
    simulate->add_option("--n-user", o.n_user, "user accounts");
    simulate->add_option("--steps", o.steps, "interaction steps per account");
    simulate->add_option("--temperature", o.temperature, "behavior softmax temperature");
    simulate->add_option("--jitter", o.theta_jitter, "per-account theta spread");

    CLI::App* rewards = app.add_subcommand("rewards", "fit per-account rewards from a log");
    rewards->add_option("--input", o.input, "activity log (JSONL)")->required();
    rewards->add_option("--labels", o.labels, "labels CSV to join onto the log");
    rewards->add_flag("--trajectories", o.dump_trajectories, "also write trajectories.jsonl");
    rewards->add_option("--gamma", o.gamma, "discount factor");
    rewards->add_option("--learning-rate", o.learning_rate, "IRL gradient step size");
    rewards->add_option("--epochs", o.epochs, "IRL epochs");
    rewards->add_option("--vi-tolerance", o.vi_tolerance, "soft value iteration tolerance");
    rewards->add_option("--horizon", o.horizon, "visitation horizon (0 = trajectory length)");

    CLI::App* classify = app.add_subcommand("classify", "cross-validated troll/user metrics");
    classify->add_option("--input", o.input, "rewards CSV")->required();
    classify->add_option("--rounds", o.rounds, "boosting rounds");
    classify->add_option("--classifier-lr", o.classifier_lr, "boosting learning rate");
    classify->add_option("--folds", o.folds, "cross-validation folds");
    classify->add_option("--parts", o.parts, "undersample parts");
    classify->add_flag("--no-standardize", o.no_standardize, "skip per-fold standardization");

    CLI::App* analyze = app.add_subcommand("analyze", "per-class reward distribution comparison");
    analyze->add_option("--input", o.input, "rewards CSV")->required();

    CLI::App* sweep = app.add_subcommand("sweep-k", "rerun the pipeline at several k");
    sweep->add_option("--input", o.input, "activity log (JSONL)")->required();
    sweep->add_option("--k-values", o.k_values, "ascending k grid")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const trollirl::PipelineConfig cfg = make_config(o);
        if (simulate->parsed()) {
            const auto out = trollirl::cmd_simulate(cfg);
            std::printf("wrote %s\nwrote %s\n", out.activity_path.c_str(), out.labels_path.c_str());
        } else if (rewards->parsed()) {
            const auto out = trollirl::cmd_rewards(cfg, o.dump_trajectories);
            std::printf("wrote %s (%d accounts, %d failures)\n", out.rewards_path.c_str(),
                        out.accounts_fit, out.accounts_failed);
            if (out.accounts_failed > 0)
                std::printf("failures listed in %s\n", out.errors_path.c_str());
            if (out.trajectories_path) std::printf("wrote %s\n", out.trajectories_path->c_str());
        } else if (classify->parsed()) {
            const auto out = trollirl::cmd_classify(cfg);
            std::printf("wrote %s\nwrote %s\n", out.metrics_path.c_str(), out.importance_path.c_str());
            std::printf("aggregate AUC %.4f precision %.4f recall %.4f\n",
                        out.aggregate.aggregate.auc, out.aggregate.aggregate.precision,
                        out.aggregate.aggregate.recall);
        } else if (analyze->parsed()) {
            const auto out = trollirl::cmd_analyze(cfg);
            std::printf("wrote %s\nwrote %s\n", out.json_path.c_str(), out.csv_path.c_str());
        } else if (sweep->parsed()) {
            const auto out = trollirl::cmd_sweep_k(cfg, o.k_values);
            std::printf("wrote %s\n", out.csv_path.c_str());
            for (const auto& row : out.rows) {
                if (row.error.empty())
                    std::printf("k=%d accounts=%d auc=%.4f\n", row.k, row.accounts, row.metrics.auc);
                else
                    std::printf("k=%d error: %s\n", row.k, row.error.c_str());
            }
        }
    } catch (const trollirl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const trollirl::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const trollirl::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
