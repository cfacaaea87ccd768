#include "trollirl/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trollirl/errors.hpp"
#include "trollirl/rng.hpp"

namespace trollirl {

Standardization standardize(std::vector<std::array<double, kNumPairs>>& X) {
    const std::size_t n = X.size();
    if (n < 2) throw DataError("standardize needs at least two rows");
    Standardization st;
    st.means.resize(kNumPairs);
    st.stds.resize(kNumPairs);
    for (int j = 0; j < kNumPairs; ++j) {
        double mean = 0.0;
        for (const auto& row : X) mean += row[j];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& row : X) var += (row[j] - mean) * (row[j] - mean);
        var /= static_cast<double>(n);
        const double sd = std::sqrt(var);
        st.means[j] = mean;
        st.stds[j] = sd > 0.0 ? sd : 1.0;
    }
    apply_standardization(st, X);
    return st;
}

void apply_standardization(const Standardization& st,
                           std::vector<std::array<double, kNumPairs>>& X) {
    for (auto& row : X)
        for (int j = 0; j < kNumPairs; ++j) row[j] = (row[j] - st.means[j]) / st.stds[j];
}

std::vector<std::vector<LabeledSample>> undersample_splits(const std::vector<LabeledSample>& samples,
                                                           int parts, std::uint64_t seed) {
    if (parts < 1) throw std::invalid_argument("parts must be >= 1");
    std::vector<LabeledSample> positives;
    std::vector<LabeledSample> negatives;
    for (const LabeledSample& s : samples) (s.label == 1 ? positives : negatives).push_back(s);
    if (static_cast<int>(negatives.size()) < parts)
        throw DataError("fewer negative samples than undersample parts");

    Rng rng(seed);
    rng.shuffle(negatives);

    std::vector<std::vector<LabeledSample>> out;
    const std::size_t base = negatives.size() / parts;
    const std::size_t extra = negatives.size() % parts;
    std::size_t pos = 0;
    for (int part = 0; part < parts; ++part) {
        const std::size_t take = base + (static_cast<std::size_t>(part) < extra ? 1 : 0);
        std::vector<LabeledSample> ds = positives;
        ds.insert(ds.end(), negatives.begin() + pos, negatives.begin() + pos + take);
        pos += take;
        out.push_back(std::move(ds));
    }
    return out;
}

namespace {

struct StumpSearchResult {
    Stump stump;
    double error = 1.0;
    bool found = false;
};

// Best weighted-error stump over all features, thresholds (midpoints between
// distinct sorted values) and polarities. Strict improvement only, so earlier
// candidates win ties: lowest feature, then lowest threshold, then polarity +1.
StumpSearchResult best_stump(const std::vector<std::array<double, kNumPairs>>& X,
                             const std::vector<int>& y_signed, const std::vector<double>& w,
                             const std::vector<std::vector<int>>& sorted_idx) {
    const std::size_t n = X.size();
    double total_neg = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (y_signed[i] < 0) total_neg += w[i];

    StumpSearchResult best;
    for (int j = 0; j < kNumPairs; ++j) {
        const std::vector<int>& order = sorted_idx[j];
        double left_pos = 0.0, left_neg = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const int i = order[k];
            if (y_signed[i] > 0)
                left_pos += w[i];
            else
                left_neg += w[i];
            const double v = X[i][j];
            const double v_next = X[order[k + 1]][j];
            if (v == v_next) continue;
            const double threshold = (v + v_next) / 2.0;
            // polarity +1: predict +1 on the right of the threshold
            const double err_plus = left_pos + (total_neg - left_neg);
            for (int polarity : {1, -1}) {
                const double err = polarity == 1 ? err_plus : 1.0 - err_plus;
                if (err < best.error || !best.found) {
                    best.stump = Stump{j, threshold, polarity, 0.0};
                    best.error = err;
                    best.found = true;
                }
            }
        }
    }
    return best;
}

}  // namespace

BoostModel train_adaboost(const std::vector<std::array<double, kNumPairs>>& X,
                          const std::vector<int>& y, int rounds, double lr,
                          BoostDiagnostics* diag) {
    const std::size_t n = X.size();
    if (n != y.size()) throw std::invalid_argument("X and y size mismatch");
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (lr <= 0.0) throw std::invalid_argument("learning rate must be positive");
    const bool has_pos = std::find(y.begin(), y.end(), 1) != y.end();
    const bool has_neg = std::find(y.begin(), y.end(), 0) != y.end();
    if (!has_pos || !has_neg) throw DataError("training data must contain both classes");

    std::vector<int> y_signed(n);
    for (std::size_t i = 0; i < n; ++i) y_signed[i] = y[i] == 1 ? 1 : -1;

    std::vector<std::vector<int>> sorted_idx(kNumPairs);
    for (int j = 0; j < kNumPairs; ++j) {
        sorted_idx[j].resize(n);
        std::iota(sorted_idx[j].begin(), sorted_idx[j].end(), 0);
        std::stable_sort(sorted_idx[j].begin(), sorted_idx[j].end(),
                         [&](int a, int b) { return X[a][j] < X[b][j]; });
    }

    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    BoostModel model;
    for (int round = 0; round < rounds; ++round) {
        StumpSearchResult found = best_stump(X, y_signed, w, sorted_idx);
        if (!found.found) break;  // all feature columns constant

        const double err = std::clamp(found.error, 1e-12, 1.0 - 1e-12);
        found.stump.stage_weight = lr * 0.5 * std::log((1.0 - err) / err);
        model.stumps.push_back(found.stump);

        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const int h = found.stump.predict(X[i].data());
            w[i] *= std::exp(-found.stump.stage_weight * y_signed[i] * h);
            sum += w[i];
        }
        for (double& wi : w) wi /= sum;

        if (diag) {
            diag->weighted_errors.push_back(found.error);
            double check = 0.0;
            for (double wi : w) check += wi;
            diag->weight_sums.push_back(check);
        }
        if (found.error <= 1e-12 || found.error >= 0.5 - 1e-12) break;
    }
    return model;
}

double predict_score(const BoostModel& model, const std::array<double, kNumPairs>& x) {
    double score = 0.0;
    for (const Stump& st : model.stumps) score += st.stage_weight * st.predict(x.data());
    return score;
}

int predict(const BoostModel& model, const std::array<double, kNumPairs>& x, double threshold) {
    return predict_score(model, x) > threshold ? 1 : 0;
}

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    const std::size_t n = scores.size();
    if (n != labels.size()) throw std::invalid_argument("scores and labels size mismatch");
    std::size_t n_pos = 0;
    for (int l : labels) n_pos += l == 1 ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw DataError("roc_auc needs both classes");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] < scores[b]; });

    // Tie-averaged ranks; everything stays in exact half-integer units.
    double rank_sum_pos = 0.0;
    std::size_t k = 0;
    while (k < n) {
        std::size_t j = k;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[k]]) ++j;
        const double avg_rank = (static_cast<double>(k + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = k; t <= j; ++t)
            if (labels[order[t]] == 1) rank_sum_pos += avg_rank;
        k = j + 1;
    }
    const double u = rank_sum_pos - static_cast<double>(n_pos) * (n_pos + 1) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::array<double, kNumPairs> feature_importance(const BoostModel& model) {
    if (model.stumps.empty()) throw std::invalid_argument("empty model");
    std::array<double, kNumPairs> imp{};
    double total = 0.0;
    for (const Stump& st : model.stumps) {
        imp[st.feature] += std::abs(st.stage_weight);
        total += std::abs(st.stage_weight);
    }
    if (total == 0.0) {
        imp.fill(1.0 / kNumPairs);
        return imp;
    }
    for (double& v : imp) v /= total;
    return imp;
}

namespace {

Metrics fold_metrics(const std::vector<double>& scores, const std::vector<int>& labels) {
    Metrics m;
    m.auc = roc_auc(scores, labels);
    double tp = 0, tn = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const int pred = scores[i] > 0.0 ? 1 : 0;
        if (labels[i] == 1)
            (pred == 1 ? tp : fn) += 1;
        else
            (pred == 0 ? tn : fp) += 1;
    }
    m.accuracy = (tp + tn) / static_cast<double>(scores.size());
    m.tpr = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    m.tnr = tn + fp > 0 ? tn / (tn + fp) : 0.0;
    m.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    m.recall = m.tpr;
    m.f1 = m.precision + m.recall > 0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                                      : 0.0;
    return m;
}

}  // namespace

EvalReport cross_validate(const std::vector<LabeledSample>& samples,
                          const CrossValidationConfig& cfg) {
    if (cfg.folds < 2) throw std::invalid_argument("folds must be >= 2");
    std::vector<int> pos_idx, neg_idx;
    for (std::size_t i = 0; i < samples.size(); ++i)
        (samples[i].label == 1 ? pos_idx : neg_idx).push_back(static_cast<int>(i));
    if (static_cast<int>(pos_idx.size()) < cfg.folds || static_cast<int>(neg_idx.size()) < cfg.folds)
        throw DataError("each class needs at least `folds` members");

    Rng rng(cfg.seed);
    rng.shuffle(pos_idx);
    rng.shuffle(neg_idx);

    // Round-robin deal keeps per-fold class counts within one of each other.
    std::vector<int> fold_of(samples.size());
    for (std::size_t i = 0; i < pos_idx.size(); ++i)
        fold_of[pos_idx[i]] = static_cast<int>(i) % cfg.folds;
    for (std::size_t i = 0; i < neg_idx.size(); ++i)
        fold_of[neg_idx[i]] = static_cast<int>(i) % cfg.folds;

    EvalReport report;
    std::array<double, kNumPairs> imp_sum{};
    for (int fold = 0; fold < cfg.folds; ++fold) {
        std::vector<std::array<double, kNumPairs>> X_train, X_test;
        std::vector<int> y_train, y_test;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (fold_of[i] == fold) {
                X_test.push_back(samples[i].features);
                y_test.push_back(samples[i].label);
            } else {
                X_train.push_back(samples[i].features);
                y_train.push_back(samples[i].label);
            }
        }
        if (cfg.standardize) {
            const Standardization st = standardize(X_train);
            apply_standardization(st, X_test);
        }
        const BoostModel model = train_adaboost(X_train, y_train, cfg.rounds, cfg.lr);
        std::vector<double> scores;
        scores.reserve(X_test.size());
        for (const auto& x : X_test) scores.push_back(predict_score(model, x));
        report.per_fold.push_back(fold_metrics(scores, y_test));
        const std::array<double, kNumPairs> imp = feature_importance(model);
        for (int j = 0; j < kNumPairs; ++j) imp_sum[j] += imp[j];
    }

    Metrics& agg = report.aggregate;
    for (const Metrics& m : report.per_fold) {
        agg.auc += m.auc;
        agg.accuracy += m.accuracy;
        agg.tpr += m.tpr;
        agg.tnr += m.tnr;
        agg.precision += m.precision;
        agg.recall += m.recall;
        agg.f1 += m.f1;
    }
    const double nf = static_cast<double>(cfg.folds);
    agg.auc /= nf;
    agg.accuracy /= nf;
    agg.tpr /= nf;
    agg.tnr /= nf;
    agg.precision /= nf;
    agg.recall /= nf;
    agg.f1 /= nf;

    double imp_total = 0.0;
    for (double v : imp_sum) imp_total += v;
    for (int j = 0; j < kNumPairs; ++j)
        report.feature_importance[j] = imp_total > 0 ? imp_sum[j] / imp_total : 1.0 / kNumPairs;
    return report;
}

}  // namespace trollirl
