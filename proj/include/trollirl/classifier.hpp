#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trollirl/types.hpp"

namespace trollirl {

struct LabeledSample {
    std::string account_id;
    std::array<double, kNumPairs> features{};
    int label = 0;  // troll = 1, user = 0
};

struct Stump {
    int feature = 0;
    double threshold = 0.0;
    int polarity = 1;  // predicts polarity when feature value > threshold
    double stage_weight = 0.0;

    int predict(const double* x) const { return x[feature] > threshold ? polarity : -polarity; }
};

struct BoostModel {
    std::vector<Stump> stumps;
};

// Per-round training diagnostics, filled on request by train_adaboost.
struct BoostDiagnostics {
    std::vector<double> weighted_errors;
    std::vector<double> weight_sums;  // sample-weight total after renormalization
};

struct Metrics {
    double auc = 0.0;
    double accuracy = 0.0;
    double tpr = 0.0;
    double tnr = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct EvalReport {
    Metrics aggregate;
    std::vector<Metrics> per_fold;
    std::array<double, kNumPairs> feature_importance{};  // sums to 1
};

struct Standardization {
    std::vector<double> means;
    std::vector<double> stds;  // zero-variance columns recorded as 1
};

// Column-wise (x - mean) / std with the population std convention.
// Requires at least two rows.
Standardization standardize(std::vector<std::array<double, kNumPairs>>& X);
void apply_standardization(const Standardization& st, std::vector<std::array<double, kNumPairs>>& X);

// Shuffles the negatives (seeded), splits them into `parts` near-equal
// disjoint subsets, and pairs each subset with all positives.
std::vector<std::vector<LabeledSample>> undersample_splits(const std::vector<LabeledSample>& samples,
                                                           int parts, std::uint64_t seed);

// Discrete AdaBoost over depth-1 stumps. Thresholds are midpoints between
// sorted distinct feature values; ties resolve to the lowest feature index,
// then the lowest threshold. Stops early on a perfect or useless stump,
// retaining it.
BoostModel train_adaboost(const std::vector<std::array<double, kNumPairs>>& X,
                          const std::vector<int>& y, int rounds, double lr,
                          BoostDiagnostics* diag = nullptr);

double predict_score(const BoostModel& model, const std::array<double, kNumPairs>& x);

// troll iff score > threshold; the tie goes to user.
int predict(const BoostModel& model, const std::array<double, kNumPairs>& x,
            double threshold = 0.0);

// Mann-Whitney statistic: P(score_pos > score_neg) + 0.5 P(equal).
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct CrossValidationConfig {
    int folds = 10;
    int rounds = 500;
    double lr = 0.05;
    std::uint64_t seed = 0;
    bool standardize = true;  // fit on the training folds only
};

// Stratified k-fold cross validation; metrics averaged over folds, feature
// importances averaged over fold models and renormalized.
EvalReport cross_validate(const std::vector<LabeledSample>& samples,
                          const CrossValidationConfig& cfg);

// |stage_weight| mass per feature, normalized to sum 1.
std::array<double, kNumPairs> feature_importance(const BoostModel& model);

}  // namespace trollirl
