#include "trollirl/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "trollirl/activity.hpp"
#include "trollirl/errors.hpp"
#include "trollirl/rng.hpp"

namespace trollirl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// %.17g round-trips doubles exactly, which keeps file-based pipeline
// composition equal to the in-process run.
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Short form for provenance lines.
std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for " + key + ": " + value);
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for " + key + ": " + value);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid seed for " + key + ": " + value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("invalid boolean for " + key + ": " + value);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    return out;
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_out_dir(const PipelineConfig& cfg) {
    if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);
}

}  // namespace

std::map<std::string, std::string> PipelineConfig::as_map() const {
    std::map<std::string, std::string> m;
    m["k"] = std::to_string(k);
    m["irl_variant"] = irl_variant == IrlVariant::linear ? "linear" : "deep";
    m["gamma"] = fmt_short(irl.gamma);
    m["learning_rate"] = fmt_short(irl.learning_rate);
    m["epochs"] = std::to_string(irl.epochs);
    m["vi_tolerance"] = fmt_short(irl.vi_tolerance);
    m["vi_max_iterations"] = std::to_string(irl.vi_max_iterations);
    m["horizon"] = std::to_string(irl.horizon);
    m["rounds"] = std::to_string(rounds);
    m["classifier_lr"] = fmt_short(classifier_lr);
    m["folds"] = std::to_string(folds);
    m["undersample_parts"] = std::to_string(undersample_parts);
    m["standardize"] = standardize ? "true" : "false";
    m["seed"] = std::to_string(seed);
    m["n_troll"] = std::to_string(n_troll);
    m["n_user"] = std::to_string(n_user);
    m["steps"] = std::to_string(steps);
    m["temperature"] = fmt_short(temperature);
    m["theta_jitter"] = fmt_short(theta_jitter);
    return m;
}

void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "k") cfg.k = parse_int(key, value);
    else if (key == "irl_variant") {
        if (value == "linear") cfg.irl_variant = IrlVariant::linear;
        else if (value == "deep") cfg.irl_variant = IrlVariant::deep;
        else throw ConfigError("irl_variant must be linear or deep, got: " + value);
    }
    else if (key == "gamma") cfg.irl.gamma = parse_double(key, value);
    else if (key == "learning_rate") cfg.irl.learning_rate = parse_double(key, value);
    else if (key == "epochs") cfg.irl.epochs = parse_int(key, value);
    else if (key == "vi_tolerance") cfg.irl.vi_tolerance = parse_double(key, value);
    else if (key == "vi_max_iterations") cfg.irl.vi_max_iterations = parse_int(key, value);
    else if (key == "horizon") cfg.irl.horizon = parse_int(key, value);
    else if (key == "rounds") cfg.rounds = parse_int(key, value);
    else if (key == "classifier_lr") cfg.classifier_lr = parse_double(key, value);
    else if (key == "folds") cfg.folds = parse_int(key, value);
    else if (key == "undersample_parts") cfg.undersample_parts = parse_int(key, value);
    else if (key == "standardize") cfg.standardize = parse_bool(key, value);
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "n_troll") cfg.n_troll = parse_int(key, value);
    else if (key == "n_user") cfg.n_user = parse_int(key, value);
    else if (key == "steps") cfg.steps = parse_int(key, value);
    else if (key == "temperature") cfg.temperature = parse_double(key, value);
    else if (key == "theta_jitter") cfg.theta_jitter = parse_double(key, value);
    else if (key == "input") cfg.input = value;
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "labels") cfg.labels = value;
    else throw ConfigError("unknown config key: " + key);
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    PipelineConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

std::string config_comment_line(const PipelineConfig& cfg) {
    std::string out = "# config:";
    for (const auto& [key, value] : cfg.as_map()) out += " " + key + "=" + value;
    return out;
}

namespace {

json config_json(const PipelineConfig& cfg) {
    json j;
    for (const auto& [key, value] : cfg.as_map()) j[key] = value;
    return j;
}

}  // namespace

SimulateOutputs cmd_simulate(const PipelineConfig& cfg) {
    cfg.irl.validate();
    PopulationConfig pc;
    pc.n_troll = cfg.n_troll;
    pc.n_user = cfg.n_user;
    pc.steps = cfg.steps;
    pc.seed = cfg.seed;
    pc.theta_jitter = cfg.theta_jitter;
    pc.troll_spec.temperature = cfg.temperature;
    pc.user_spec.temperature = cfg.temperature;
    pc.troll_spec.gamma = cfg.irl.gamma;
    pc.user_spec.gamma = cfg.irl.gamma;
    const PopulationResult pop = generate_population(pc);

    ensure_out_dir(cfg);
    SimulateOutputs out;
    out.activity_path = join_path(cfg.out_dir, "activity.jsonl");
    out.labels_path = join_path(cfg.out_dir, "labels.csv");
    {
        std::ofstream f = open_output(out.activity_path);
        write_activity_log(f, pop.events);
    }
    {
        std::ofstream f = open_output(out.labels_path);
        f << config_comment_line(cfg) << '\n' << "account_id,label\n";
        for (const auto& [id, label] : pop.labels) f << id << ',' << label << '\n';
    }
    return out;
}

void write_rewards_csv(const std::string& path, const std::vector<AccountRewards>& rows,
                       bool with_theta, const PipelineConfig& cfg) {
    std::ofstream out = open_output(path);
    out << config_comment_line(cfg) << '\n';
    out << "account_id,label";
    for (int p = 0; p < kNumPairs; ++p) out << ",r_" << pair_code(p);
    if (with_theta) out << ",theta_RT,theta_RP,theta_tw,theta_rt,theta_rp";
    out << '\n';
    for (const AccountRewards& row : rows) {
        out << row.account_id << ',' << (row.label == 1 ? "troll" : "user");
        for (int p = 0; p < kNumPairs; ++p) out << ',' << fmt_double(row.rewards[p]);
        if (with_theta)
            for (int i = 0; i < kNumFeatures; ++i) out << ',' << fmt_double(row.theta[i]);
        out << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::vector<AccountRewards> read_rewards_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open rewards CSV: " + path);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        header = split_csv_line(line);
        break;
    }
    if (header.size() < 2 + kNumPairs || header[0] != "account_id" || header[1] != "label")
        throw DataError("rewards CSV: unexpected header in " + path);
    for (int p = 0; p < kNumPairs; ++p)
        if (header[2 + p] != "r_" + pair_code(p))
            throw DataError("rewards CSV: expected column r_" + pair_code(p));
    const bool with_theta = header.size() == 2 + kNumPairs + kNumFeatures;
    if (!with_theta && header.size() != 2 + kNumPairs)
        throw DataError("rewards CSV: unexpected column count");

    std::vector<AccountRewards> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ParseError(line_no, "wrong field count in rewards CSV");
        AccountRewards row;
        row.account_id = fields[0];
        if (fields[1] == "troll") row.label = 1;
        else if (fields[1] == "user") row.label = 0;
        else if (fields[1].empty()) row.label = -1;  // unlabeled
        else throw ParseError(line_no, "unknown label: " + fields[1]);
        try {
            for (int p = 0; p < kNumPairs; ++p) row.rewards[p] = std::stod(fields[2 + p]);
            if (with_theta) {
                row.has_theta = true;
                for (int i = 0; i < kNumFeatures; ++i)
                    row.theta[i] = std::stod(fields[2 + kNumPairs + i]);
            }
        } catch (const std::exception&) {
            throw ParseError(line_no, "malformed number in rewards CSV");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::map<std::string, std::string> read_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open labels CSV: " + path);
    std::map<std::string, std::string> labels;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (!header_seen) {
            if (fields.size() != 2 || fields[0] != "account_id" || fields[1] != "label")
                throw ParseError(line_no, "labels CSV must have header account_id,label");
            header_seen = true;
            continue;
        }
        if (fields.size() != 2) throw ParseError(line_no, "wrong field count in labels CSV");
        if (fields[1] != "troll" && fields[1] != "user")
            throw ParseError(line_no, "unknown label: " + fields[1]);
        labels[fields[0]] = fields[1];
    }
    return labels;
}

}  // namespace

FitResult fit_rewards(const std::map<std::string, std::vector<ActivityEvent>>& by_account,
                      const PipelineConfig& cfg) {
    cfg.irl.validate();
    const FeatureMatrix& f = feature_matrix();
    FitResult result;
    std::uint64_t index = 0;
    for (const auto& [id, events] : by_account) {
        const std::uint64_t account_index = index++;
        std::string label;
        for (const ActivityEvent& ev : events) {
            if (!ev.label.empty()) {
                label = ev.label;
                break;
            }
        }
        try {
            const Trajectory traj = build_trajectory(id, events);
            const TransitionModel T = estimate_transitions(traj);
            AccountRewards row;
            row.account_id = id;
            row.label = label == "troll" ? 1 : label == "user" ? 0 : -1;
            if (cfg.irl_variant == IrlVariant::linear) {
                const MaxentResult fit = maxent_irl(f, T, traj, cfg.irl);
                row.rewards = fit.rewards;
                row.theta = fit.theta;
                row.has_theta = true;
            } else {
                IrlConfig irl = cfg.irl;
                irl.seed = derive_seed(cfg.irl.seed, account_index);
                row.rewards = deep_maxent_irl(f, T, traj, irl);
            }
            result.rewards.push_back(std::move(row));
        } catch (const std::exception& e) {
            result.failures.emplace_back(id, e.what());
        }
    }
    return result;
}

RewardsOutputs cmd_rewards(const PipelineConfig& cfg, bool dump_trajectories) {
    std::vector<ActivityEvent> events = parse_activity_log_file(cfg.input);
    if (!cfg.labels.empty()) {
        const std::map<std::string, std::string> labels = read_labels_csv(cfg.labels);
        for (ActivityEvent& ev : events) {
            const auto it = labels.find(ev.account_id);
            if (it != labels.end()) ev.label = it->second;
        }
    }
    const auto by_account = filter_accounts(events, cfg.k);
    if (by_account.empty())
        throw DataError("empty retained set: no account has " + std::to_string(cfg.k) +
                        " active and " + std::to_string(cfg.k) + " passive events");

    const FitResult fit = fit_rewards(by_account, cfg);
    if (fit.rewards.empty()) throw DataError("IRL failed for every retained account");

    ensure_out_dir(cfg);
    RewardsOutputs out;
    out.rewards_path = join_path(cfg.out_dir, "rewards.csv");
    out.errors_path = join_path(cfg.out_dir, "rewards_errors.txt");
    out.accounts_fit = static_cast<int>(fit.rewards.size());
    out.accounts_failed = static_cast<int>(fit.failures.size());
    write_rewards_csv(out.rewards_path, fit.rewards, cfg.irl_variant == IrlVariant::linear, cfg);
    {
        std::ofstream f = open_output(out.errors_path);
        for (const auto& [id, reason] : fit.failures) f << id << '\t' << reason << '\n';
    }
    if (dump_trajectories) {
        out.trajectories_path = join_path(cfg.out_dir, "trajectories.jsonl");
        std::vector<Trajectory> trajectories;
        for (const auto& [id, evs] : by_account) trajectories.push_back(build_trajectory(id, evs));
        std::ofstream f = open_output(*out.trajectories_path);
        write_trajectories(f, trajectories);
    }
    return out;
}

namespace {

std::vector<LabeledSample> samples_from_rewards(const std::vector<AccountRewards>& rows) {
    std::vector<LabeledSample> samples;
    for (const AccountRewards& row : rows) {
        if (row.label < 0) throw DataError("unlabeled account in rewards table: " + row.account_id);
        samples.push_back({row.account_id, row.rewards, row.label});
    }
    return samples;
}

struct DetailedEvaluation {
    std::vector<EvalReport> per_split;
    EvalReport aggregate;
};

DetailedEvaluation evaluate_detailed(const std::vector<AccountRewards>& rewards,
                                     const PipelineConfig& cfg) {
    const std::vector<LabeledSample> samples = samples_from_rewards(rewards);
    const auto splits = undersample_splits(samples, cfg.undersample_parts,
                                           derive_seed(cfg.seed, 0xC0FFEE));
    DetailedEvaluation ev;
    std::array<double, kNumPairs> imp{};
    for (std::size_t i = 0; i < splits.size(); ++i) {
        CrossValidationConfig cv;
        cv.folds = cfg.folds;
        cv.rounds = cfg.rounds;
        cv.lr = cfg.classifier_lr;
        cv.seed = derive_seed(cfg.seed, i);
        cv.standardize = cfg.standardize;
        EvalReport report = cross_validate(splits[i], cv);
        for (int j = 0; j < kNumPairs; ++j) imp[j] += report.feature_importance[j];
        ev.per_split.push_back(std::move(report));
    }

    Metrics& agg = ev.aggregate.aggregate;
    for (const EvalReport& rep : ev.per_split) {
        agg.auc += rep.aggregate.auc;
        agg.accuracy += rep.aggregate.accuracy;
        agg.tpr += rep.aggregate.tpr;
        agg.tnr += rep.aggregate.tnr;
        agg.precision += rep.aggregate.precision;
        agg.recall += rep.aggregate.recall;
        agg.f1 += rep.aggregate.f1;
        ev.aggregate.per_fold.insert(ev.aggregate.per_fold.end(), rep.per_fold.begin(),
                                     rep.per_fold.end());
    }
    const double ns = static_cast<double>(ev.per_split.size());
    agg.auc /= ns;
    agg.accuracy /= ns;
    agg.tpr /= ns;
    agg.tnr /= ns;
    agg.precision /= ns;
    agg.recall /= ns;
    agg.f1 /= ns;
    double imp_total = 0.0;
    for (double v : imp) imp_total += v;
    for (int j = 0; j < kNumPairs; ++j)
        ev.aggregate.feature_importance[j] = imp_total > 0 ? imp[j] / imp_total : 1.0 / kNumPairs;
    return ev;
}

json metrics_json(const Metrics& m) {
    return json{{"auc", m.auc},     {"accuracy", m.accuracy},   {"tpr", m.tpr},
                {"tnr", m.tnr},     {"precision", m.precision}, {"recall", m.recall},
                {"f1", m.f1}};
}

}  // namespace

EvalReport evaluate_rewards(const std::vector<AccountRewards>& rewards,
                            const PipelineConfig& cfg) {
    return evaluate_detailed(rewards, cfg).aggregate;
}

ClassifyOutputs cmd_classify(const PipelineConfig& cfg) {
    const std::vector<AccountRewards> rows = read_rewards_csv(cfg.input);
    if (rows.empty()) throw DataError("empty rewards table: " + cfg.input);
    const DetailedEvaluation ev = evaluate_detailed(rows, cfg);

    ensure_out_dir(cfg);
    ClassifyOutputs out;
    out.aggregate = ev.aggregate;
    out.metrics_path = join_path(cfg.out_dir, "metrics.json");
    out.importance_path = join_path(cfg.out_dir, "importance.csv");

    json j;
    j["config"] = config_json(cfg);
    j["aggregate"] = metrics_json(ev.aggregate.aggregate);
    json splits = json::array();
    for (std::size_t i = 0; i < ev.per_split.size(); ++i) {
        json split;
        split["split"] = i;
        split["mean"] = metrics_json(ev.per_split[i].aggregate);
        json folds = json::array();
        for (std::size_t f = 0; f < ev.per_split[i].per_fold.size(); ++f) {
            json fold = metrics_json(ev.per_split[i].per_fold[f]);
            fold["fold"] = f;
            folds.push_back(std::move(fold));
        }
        split["folds"] = std::move(folds);
        splits.push_back(std::move(split));
    }
    j["splits"] = std::move(splits);
    json imp;
    for (int p = 0; p < kNumPairs; ++p) imp[pair_code(p)] = ev.aggregate.feature_importance[p];
    j["feature_importance"] = std::move(imp);
    {
        std::ofstream f = open_output(out.metrics_path);
        f << j.dump(2) << '\n';
    }
    {
        std::ofstream f = open_output(out.importance_path);
        f << config_comment_line(cfg) << '\n' << "pair,importance\n";
        for (int p = 0; p < kNumPairs; ++p)
            f << pair_code(p) << ',' << fmt_double(ev.aggregate.feature_importance[p]) << '\n';
    }
    return out;
}

namespace {

json summary_json(const DistributionSummary& s) {
    json j;
    j["mean"] = s.mean;
    j["variance"] = s.variance;
    json q;
    for (std::size_t i = 0; i < kSummaryQuantiles.size(); ++i) {
        char key[8];
        std::snprintf(key, sizeof(key), "q%02d", static_cast<int>(kSummaryQuantiles[i] * 100));
        q[key] = s.quantiles[i];
    }
    j["quantiles"] = std::move(q);
    return j;
}

void write_comparison_csv(std::ofstream& f, const FeatureComparison& cmp) {
    const auto emit = [&](const std::string& cls, const std::string& stat, double value) {
        f << cls << ',' << cmp.name << ',' << stat << ',' << fmt_double(value) << '\n';
    };
    for (const auto& [cls, summary] :
         {std::pair<std::string, const DistributionSummary*>{"troll", &cmp.troll},
          std::pair<std::string, const DistributionSummary*>{"user", &cmp.user}}) {
        emit(cls, "mean", summary->mean);
        emit(cls, "variance", summary->variance);
        for (std::size_t i = 0; i < kSummaryQuantiles.size(); ++i) {
            char stat[8];
            std::snprintf(stat, sizeof(stat), "q%02d", static_cast<int>(kSummaryQuantiles[i] * 100));
            emit(cls, stat, summary->quantiles[i]);
        }
    }
    emit("both", "mean_difference", cmp.mean_difference);
    emit("both", "ks_statistic", cmp.ks.statistic);
    emit("both", "ks_p_value", cmp.ks.p_value);
    emit("both", "significant", cmp.significant ? 1.0 : 0.0);
}

}  // namespace

AnalyzeOutputs cmd_analyze(const PipelineConfig& cfg) {
    const std::vector<AccountRewards> rows = read_rewards_csv(cfg.input);
    if (rows.empty()) throw DataError("empty rewards table: " + cfg.input);
    for (const AccountRewards& row : rows)
        if (row.label < 0) throw DataError("unlabeled account in rewards table: " + row.account_id);
    const ClassComparison cmp = class_compare(rows);

    ensure_out_dir(cfg);
    AnalyzeOutputs out;
    out.json_path = join_path(cfg.out_dir, "analysis.json");
    out.csv_path = join_path(cfg.out_dir, "analysis.csv");

    json j;
    j["config"] = config_json(cfg);
    j["alpha"] = cmp.alpha;
    const auto comparison_json = [](const FeatureComparison& c) {
        json cj;
        cj["name"] = c.name;
        cj["troll"] = summary_json(c.troll);
        cj["user"] = summary_json(c.user);
        cj["mean_difference"] = c.mean_difference;
        cj["ks"] = json{{"statistic", c.ks.statistic}, {"p_value", c.ks.p_value}};
        cj["significant"] = c.significant;
        return cj;
    };
    json pairs = json::array();
    for (const FeatureComparison& c : cmp.pairs) pairs.push_back(comparison_json(c));
    j["pairs"] = std::move(pairs);
    json thetas = json::array();
    for (const FeatureComparison& c : cmp.thetas) thetas.push_back(comparison_json(c));
    j["thetas"] = std::move(thetas);
    {
        std::ofstream f = open_output(out.json_path);
        f << j.dump(2) << '\n';
    }
    {
        std::ofstream f = open_output(out.csv_path);
        f << config_comment_line(cfg) << '\n' << "class,feature,stat,value\n";
        for (const FeatureComparison& c : cmp.pairs) write_comparison_csv(f, c);
        for (const FeatureComparison& c : cmp.thetas) write_comparison_csv(f, c);
    }
    return out;
}

std::vector<SweepRow> varying_k_sweep(const std::vector<ActivityEvent>& events,
                                      const std::vector<int>& k_values,
                                      const PipelineConfig& cfg) {
    if (k_values.empty()) throw ConfigError("sweep needs at least one k value");
    if (!std::is_sorted(k_values.begin(), k_values.end()))
        throw ConfigError("sweep k values must be ascending");
    std::vector<SweepRow> rows;
    for (int k : k_values) {
        SweepRow row;
        row.k = k;
        try {
            const auto by_account = filter_accounts(events, k);
            row.accounts = static_cast<int>(by_account.size());
            if (by_account.empty()) throw DataError("no accounts retained at k=" + std::to_string(k));
            PipelineConfig local = cfg;
            local.k = k;
            const FitResult fit = fit_rewards(by_account, local);
            if (fit.rewards.empty()) throw DataError("IRL failed for every account at k=" + std::to_string(k));
            row.metrics = evaluate_rewards(fit.rewards, local).aggregate;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

SweepOutputs cmd_sweep_k(const PipelineConfig& cfg, const std::vector<int>& k_values) {
    const std::vector<ActivityEvent> events = parse_activity_log_file(cfg.input);
    SweepOutputs out;
    out.rows = varying_k_sweep(events, k_values, cfg);

    ensure_out_dir(cfg);
    out.csv_path = join_path(cfg.out_dir, "sweep.csv");
    std::ofstream f = open_output(out.csv_path);
    f << config_comment_line(cfg) << '\n'
      << "k,accounts,auc,accuracy,precision,recall,f1,error\n";
    for (const SweepRow& row : out.rows) {
        std::string err = row.error;
        std::replace(err.begin(), err.end(), ',', ';');
        f << row.k << ',' << row.accounts << ',' << fmt_double(row.metrics.auc) << ','
          << fmt_double(row.metrics.accuracy) << ',' << fmt_double(row.metrics.precision) << ','
          << fmt_double(row.metrics.recall) << ',' << fmt_double(row.metrics.f1) << ',' << err
          << '\n';
    }
    return out;
}

}  // namespace trollirl
