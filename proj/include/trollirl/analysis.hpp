#pragma once

#include <string>
#include <vector>

#include "trollirl/types.hpp"

namespace trollirl {

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Exact sup-difference of the two empirical CDFs over the merged sample;
// p-value from the asymptotic Kolmogorov distribution at effective size
// n*m/(n+m). Both samples must be non-empty.
KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

// Least-squares solution of theta^T f = r via the normal equations
// (f f^T) theta = f r. The canonical feature matrix has full row rank, so
// the solution is unique; a rank-deficient f is rejected.
ThetaVector recover_theta(const FeatureMatrix& f, const RewardVector& r);

struct DistributionSummary {
    double mean = 0.0;
    double variance = 0.0;                        // population convention
    std::array<double, 5> quantiles{};            // 5/25/50/75/95 percent
};

inline constexpr std::array<double, 5> kSummaryQuantiles = {0.05, 0.25, 0.50, 0.75, 0.95};

// Linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

DistributionSummary summarize(const std::vector<double>& values);

struct FeatureComparison {
    std::string name;  // pair code or theta feature name
    DistributionSummary troll;
    DistributionSummary user;
    double mean_difference = 0.0;  // troll mean - user mean
    KsResult ks;
    bool significant = false;  // p < alpha
};

struct AccountRewards {
    std::string account_id;
    int label = 0;  // troll = 1, user = 0
    RewardVector rewards{};
    bool has_theta = false;
    ThetaVector theta{};
};

struct ClassComparison {
    std::vector<FeatureComparison> pairs;   // 12 reward dimensions
    std::vector<FeatureComparison> thetas;  // 5 weight dimensions, if present
    double alpha = 0.01;
};

// Standardizes each reward column jointly over both classes, then compares
// the per-class distributions: summary stats, two-sample KS, and a
// significance flag at p < alpha. Theta columns are compared unstandardized
// alongside when present. Both classes must be present.
ClassComparison class_compare(const std::vector<AccountRewards>& accounts, double alpha = 0.01);

}  // namespace trollirl
