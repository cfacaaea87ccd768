#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trollirl/analysis.hpp"
#include "trollirl/classifier.hpp"
#include "trollirl/maxent.hpp"
#include "trollirl/simulate.hpp"

namespace trollirl {

enum class IrlVariant { linear, deep };

// Everything the subcommands need, with the defaults of the study this
// pipeline reproduces: k = 10, 10-fold CV, five-part undersampling,
// AdaBoost with 500 rounds at learning rate 0.05.
struct PipelineConfig {
    int k = 10;
    IrlVariant irl_variant = IrlVariant::linear;
    IrlConfig irl;
    int rounds = 500;
    double classifier_lr = 0.05;
    int folds = 10;
    int undersample_parts = 5;
    bool standardize = true;
    std::uint64_t seed = 0;

    // simulate
    int n_troll = 150;
    int n_user = 750;
    int steps = 200;
    double temperature = 1.0;
    double theta_jitter = 0.25;

    std::string input;  // activity log path (rewards/sweep) or rewards CSV (classify/analyze)
    std::string out_dir = ".";
    std::string labels;  // optional labels CSV joined onto the activity log

    // Key-value view in sorted key order; echoed into outputs for provenance.
    std::map<std::string, std::string> as_map() const;
};

// `key = value` lines; '#' starts a comment. Unknown keys are rejected.
PipelineConfig load_config(const std::string& path);
void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value);

std::string config_comment_line(const PipelineConfig& cfg);  // "# config: k=10 ..."

// Subcommand cores. Each is a pure function of (inputs, config, seed) and
// writes its outputs under cfg.out_dir. Paths written are returned.
struct SimulateOutputs {
    std::string activity_path;
    std::string labels_path;
};
SimulateOutputs cmd_simulate(const PipelineConfig& cfg);

struct RewardsOutputs {
    std::string rewards_path;
    std::string errors_path;       // per-account IRL failures, one per line
    int accounts_fit = 0;
    int accounts_failed = 0;
    std::optional<std::string> trajectories_path;  // when requested
};
RewardsOutputs cmd_rewards(const PipelineConfig& cfg, bool dump_trajectories = false);

struct ClassifyOutputs {
    std::string metrics_path;     // JSON report
    std::string importance_path;  // CSV, 12 rows
    EvalReport aggregate;
};
ClassifyOutputs cmd_classify(const PipelineConfig& cfg);

struct AnalyzeOutputs {
    std::string json_path;
    std::string csv_path;  // long format: class,feature,stat,value
};
AnalyzeOutputs cmd_analyze(const PipelineConfig& cfg);

struct SweepRow {
    int k = 0;
    int accounts = 0;
    Metrics metrics;
    std::string error;  // non-empty if this k failed
};
std::vector<SweepRow> varying_k_sweep(const std::vector<ActivityEvent>& events,
                                      const std::vector<int>& k_values,
                                      const PipelineConfig& cfg);

struct SweepOutputs {
    std::string csv_path;
    std::vector<SweepRow> rows;
};
SweepOutputs cmd_sweep_k(const PipelineConfig& cfg, const std::vector<int>& k_values);

// Rewards table I/O (CSV with 12 reward columns in pair-index order and,
// for the linear variant, 5 theta columns).
void write_rewards_csv(const std::string& path, const std::vector<AccountRewards>& rows,
                       bool with_theta, const PipelineConfig& cfg);
std::vector<AccountRewards> read_rewards_csv(const std::string& path);

// In-memory stages shared by cmd_rewards / cmd_classify / varying_k_sweep.
struct FitResult {
    std::vector<AccountRewards> rewards;
    std::vector<std::pair<std::string, std::string>> failures;  // (account_id, reason)
};
FitResult fit_rewards(const std::map<std::string, std::vector<ActivityEvent>>& by_account,
                      const PipelineConfig& cfg);

EvalReport evaluate_rewards(const std::vector<AccountRewards>& rewards, const PipelineConfig& cfg);

}  // namespace trollirl
