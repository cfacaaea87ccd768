#include "trollirl/activity.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "trollirl/errors.hpp"

namespace trollirl {

namespace {

using nlohmann::json;

ActivityEvent event_from_json(const json& j, std::size_t line) {
    if (!j.is_object()) throw ParseError(line, "record is not a JSON object");
    ActivityEvent ev;
    if (!j.contains("account_id") || !j["account_id"].is_string())
        throw ParseError(line, "missing or non-string field: account_id");
    ev.account_id = j["account_id"].get<std::string>();
    if (!j.contains("ts") || !j["ts"].is_number_integer())
        throw ParseError(line, "missing or non-integer field: ts");
    ev.ts = j["ts"].get<std::int64_t>();
    if (ev.ts < 0) throw ParseError(line, "negative timestamp");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ParseError(line, "missing or non-string field: kind");
    try {
        ev.kind = event_kind_from_string(j["kind"].get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
    }
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw ParseError(line, "non-string field: label");
        ev.label = j["label"].get<std::string>();
        if (ev.label != "troll" && ev.label != "user")
            throw ParseError(line, "unknown label: " + ev.label);
    }
    return ev;
}

}  // namespace

std::vector<ActivityEvent> parse_activity_log(std::istream& in) {
    std::vector<ActivityEvent> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw ParseError(line_no, "invalid JSON");
        events.push_back(event_from_json(j, line_no));
    }
    if (in.bad()) throw DataError("I/O failure while reading activity log");
    return events;
}

std::vector<ActivityEvent> parse_activity_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open activity log: " + path);
    return parse_activity_log(in);
}

void write_activity_log(std::ostream& out, const std::vector<ActivityEvent>& events) {
    for (const ActivityEvent& ev : events) {
        json j;
        j["account_id"] = ev.account_id;
        j["ts"] = ev.ts;
        j["kind"] = to_string(ev.kind);
        if (!ev.label.empty()) j["label"] = ev.label;
        out << j.dump() << '\n';
    }
}

std::map<std::string, std::vector<ActivityEvent>> filter_accounts(
    const std::vector<ActivityEvent>& events, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::map<std::string, std::vector<ActivityEvent>> by_account;
    for (const ActivityEvent& ev : events) by_account[ev.account_id].push_back(ev);

    std::map<std::string, std::vector<ActivityEvent>> kept;
    for (auto& [id, evs] : by_account) {
        const auto active =
            std::count_if(evs.begin(), evs.end(), [](const ActivityEvent& e) { return is_active(e.kind); });
        const auto passive = static_cast<std::int64_t>(evs.size()) - active;
        if (active < k || passive < k) continue;
        std::stable_sort(evs.begin(), evs.end(),
                         [](const ActivityEvent& a, const ActivityEvent& b) { return a.ts < b.ts; });
        kept.emplace(id, std::move(evs));
    }
    return kept;
}

Trajectory build_trajectory(const std::string& account_id,
                            const std::vector<ActivityEvent>& events) {
    if (events.empty()) throw DataError("cannot build a trajectory from no events");
    Trajectory traj;
    traj.account_id = account_id;
    State pending = State::NT;
    bool has_pending = false;
    for (const ActivityEvent& ev : events) {
        switch (ev.kind) {
            case EventKind::active_tweet:
            case EventKind::active_retweet:
            case EventKind::active_reply_or_mention: {
                Action a = ev.kind == EventKind::active_tweet ? Action::tw
                           : ev.kind == EventKind::active_retweet ? Action::rt
                                                                  : Action::rp;
                traj.steps.push_back({pending, a});
                pending = State::NT;
                has_pending = false;
                break;
            }
            case EventKind::passive_retweet:
            case EventKind::passive_reply_or_mention: {
                if (has_pending) traj.steps.push_back({pending, Action::nt});
                pending = ev.kind == EventKind::passive_retweet ? State::RT : State::RP;
                has_pending = true;
                break;
            }
        }
    }
    if (has_pending) traj.steps.push_back({pending, Action::nt});
    return traj;
}

TransitionModel estimate_transitions(const Trajectory& traj) {
    if (traj.steps.size() < 2) throw DataError("trajectory too short to estimate transitions");
    TransitionModel model;
    for (std::size_t i = 0; i + 1 < traj.steps.size(); ++i) {
        const Step& cur = traj.steps[i];
        const Step& next = traj.steps[i + 1];
        ++model.counts[static_cast<int>(cur.state)][static_cast<int>(cur.action)]
                      [static_cast<int>(next.state)];
    }
    for (int s = 0; s < kNumStates; ++s) {
        for (int a = 0; a < kNumActions; ++a) {
            std::int64_t total = 0;
            for (int s2 = 0; s2 < kNumStates; ++s2) total += model.counts[s][a][s2];
            for (int s2 = 0; s2 < kNumStates; ++s2) {
                model.probs[s][a][s2] = total == 0
                                            ? 1.0 / kNumStates
                                            : static_cast<double>(model.counts[s][a][s2]) / total;
            }
        }
    }
    return model;
}

void write_trajectories(std::ostream& out, const std::vector<Trajectory>& trajectories) {
    for (const Trajectory& traj : trajectories) {
        nlohmann::json steps = nlohmann::json::array();
        for (const Step& st : traj.steps)
            steps.push_back({to_code(st.state), to_code(st.action)});
        nlohmann::json j;
        j["account_id"] = traj.account_id;
        j["steps"] = std::move(steps);
        out << j.dump() << '\n';
    }
}

std::vector<Trajectory> read_trajectories(std::istream& in) {
    std::vector<Trajectory> result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("account_id") || !j.contains("steps"))
            throw ParseError(line_no, "invalid trajectory record");
        Trajectory traj;
        traj.account_id = j["account_id"].get<std::string>();
        for (const auto& pair : j["steps"]) {
            if (!pair.is_array() || pair.size() != 2)
                throw ParseError(line_no, "step is not a [state, action] pair");
            try {
                traj.steps.push_back({state_from_code(pair[0].get<std::string>()),
                                      action_from_code(pair[1].get<std::string>())});
            } catch (const std::invalid_argument& e) {
                throw ParseError(line_no, e.what());
            }
        }
        result.push_back(std::move(traj));
    }
    return result;
}

}  // namespace trollirl
