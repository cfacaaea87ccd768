#include "trollirl/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "trollirl/errors.hpp"

namespace trollirl {

namespace {

// Kolmogorov survival function Q(lambda) = 2 sum_j (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum) + 1e-300) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw DataError("ks_two_sample needs non-empty samples");
    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const std::size_t n = sa.size(), m = sb.size();
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        const double x = (j >= m || (i < n && sa[i] <= sb[j])) ? sa[i] : sb[j];
        while (i < n && sa[i] <= x) ++i;
        while (j < m && sb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }

    const double n_eff = static_cast<double>(n) * m / (n + m);
    // Small-sample correction from Numerical Recipes before the asymptotic tail.
    const double lambda = (std::sqrt(n_eff) + 0.12 + 0.11 / std::sqrt(n_eff)) * d;
    return KsResult{d, kolmogorov_q(lambda)};
}

ThetaVector recover_theta(const FeatureMatrix& f, const RewardVector& r) {
    // Normal equations (f f^T) theta = f r, solved by Gaussian elimination
    // with partial pivoting. 5x5, so no library is worth the dependency.
    double A[kNumFeatures][kNumFeatures];
    double b[kNumFeatures];
    for (int i = 0; i < kNumFeatures; ++i) {
        for (int j = 0; j < kNumFeatures; ++j) {
            double acc = 0.0;
            for (int p = 0; p < kNumPairs; ++p) acc += f[i][p] * f[j][p];
            A[i][j] = acc;
        }
        double acc = 0.0;
        for (int p = 0; p < kNumPairs; ++p) acc += f[i][p] * r[p];
        b[i] = acc;
    }

    for (int col = 0; col < kNumFeatures; ++col) {
        int pivot = col;
        for (int row = col + 1; row < kNumFeatures; ++row)
            if (std::abs(A[row][col]) > std::abs(A[pivot][col])) pivot = row;
        if (std::abs(A[pivot][col]) < 1e-12)
            throw NumericalError("feature matrix is rank deficient; cannot recover theta");
        if (pivot != col) {
            for (int j = 0; j < kNumFeatures; ++j) std::swap(A[col][j], A[pivot][j]);
            std::swap(b[col], b[pivot]);
        }
        for (int row = col + 1; row < kNumFeatures; ++row) {
            const double factor = A[row][col] / A[col][col];
            for (int j = col; j < kNumFeatures; ++j) A[row][j] -= factor * A[col][j];
            b[row] -= factor * b[col];
        }
    }
    ThetaVector theta{};
    for (int row = kNumFeatures - 1; row >= 0; --row) {
        double acc = b[row];
        for (int j = row + 1; j < kNumFeatures; ++j) acc -= A[row][j] * theta[j];
        theta[row] = acc / A[row][row];
    }
    return theta;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of empty sample");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile level out of [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * (static_cast<double>(values.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

DistributionSummary summarize(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("summarize of empty sample");
    DistributionSummary s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    for (double v : values) s.variance += (v - s.mean) * (v - s.mean);
    s.variance /= static_cast<double>(values.size());
    for (std::size_t i = 0; i < kSummaryQuantiles.size(); ++i)
        s.quantiles[i] = quantile(values, kSummaryQuantiles[i]);
    return s;
}

namespace {

FeatureComparison compare_feature(const std::string& name, const std::vector<double>& troll,
                                  const std::vector<double>& user, double alpha) {
    FeatureComparison cmp;
    cmp.name = name;
    cmp.troll = summarize(troll);
    cmp.user = summarize(user);
    cmp.mean_difference = cmp.troll.mean - cmp.user.mean;
    cmp.ks = ks_two_sample(troll, user);
    cmp.significant = cmp.ks.p_value < alpha;
    return cmp;
}

}  // namespace

ClassComparison class_compare(const std::vector<AccountRewards>& accounts, double alpha) {
    std::size_t n_troll = 0;
    for (const AccountRewards& acc : accounts) n_troll += acc.label == 1 ? 1 : 0;
    if (n_troll == 0 || n_troll == accounts.size())
        throw DataError("class_compare needs both classes");

    // Joint standardization across both classes, column by column; a constant
    // column stays centered at zero.
    std::vector<RewardVector> standardized(accounts.size());
    for (int p = 0; p < kNumPairs; ++p) {
        double mean = 0.0;
        for (const AccountRewards& acc : accounts) mean += acc.rewards[p];
        mean /= static_cast<double>(accounts.size());
        double var = 0.0;
        for (const AccountRewards& acc : accounts)
            var += (acc.rewards[p] - mean) * (acc.rewards[p] - mean);
        var /= static_cast<double>(accounts.size());
        const double sd = var > 0.0 ? std::sqrt(var) : 1.0;
        for (std::size_t i = 0; i < accounts.size(); ++i)
            standardized[i][p] = (accounts[i].rewards[p] - mean) / sd;
    }

    ClassComparison result;
    result.alpha = alpha;
    for (int p = 0; p < kNumPairs; ++p) {
        std::vector<double> troll, user;
        for (std::size_t i = 0; i < accounts.size(); ++i)
            (accounts[i].label == 1 ? troll : user).push_back(standardized[i][p]);
        result.pairs.push_back(compare_feature(pair_code(p), troll, user, alpha));
    }

    const bool all_theta =
        std::all_of(accounts.begin(), accounts.end(), [](const AccountRewards& a) { return a.has_theta; });
    if (all_theta) {
        static const char* kThetaNames[kNumFeatures] = {"RT", "RP", "tw", "rt", "rp"};
        for (int i = 0; i < kNumFeatures; ++i) {
            std::vector<double> troll, user;
            for (const AccountRewards& acc : accounts)
                (acc.label == 1 ? troll : user).push_back(acc.theta[i]);
            result.thetas.push_back(compare_feature(std::string("theta_") + kThetaNames[i], troll,
                                                    user, alpha));
        }
    }
    return result;
}

}  // namespace trollirl
