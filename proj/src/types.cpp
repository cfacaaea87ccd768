#include "trollirl/types.hpp"

#include <stdexcept>

namespace trollirl {

const char* to_code(State s) {
    switch (s) {
        case State::RT: return "RT";
        case State::RP: return "RP";
        case State::NT: return "NT";
    }
    throw std::invalid_argument("bad state");
}

const char* to_code(Action a) {
    switch (a) {
        case Action::tw: return "tw";
        case Action::rt: return "rt";
        case Action::rp: return "rp";
        case Action::nt: return "nt";
    }
    throw std::invalid_argument("bad action");
}

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::active_tweet: return "active_tweet";
        case EventKind::active_retweet: return "active_retweet";
        case EventKind::active_reply_or_mention: return "active_reply_or_mention";
        case EventKind::passive_retweet: return "passive_retweet";
        case EventKind::passive_reply_or_mention: return "passive_reply_or_mention";
    }
    throw std::invalid_argument("bad event kind");
}

State state_from_code(const std::string& code) {
    if (code == "RT") return State::RT;
    if (code == "RP") return State::RP;
    if (code == "NT") return State::NT;
    throw std::invalid_argument("unknown state code: " + code);
}

Action action_from_code(const std::string& code) {
    if (code == "tw") return Action::tw;
    if (code == "rt") return Action::rt;
    if (code == "rp") return Action::rp;
    if (code == "nt") return Action::nt;
    throw std::invalid_argument("unknown action code: " + code);
}

EventKind event_kind_from_string(const std::string& s) {
    if (s == "active_tweet") return EventKind::active_tweet;
    if (s == "active_retweet") return EventKind::active_retweet;
    if (s == "active_reply_or_mention") return EventKind::active_reply_or_mention;
    if (s == "passive_retweet") return EventKind::passive_retweet;
    if (s == "passive_reply_or_mention") return EventKind::passive_reply_or_mention;
    throw std::invalid_argument("unknown kind: " + s);
}

Step pair_from_index(int index) {
    if (index < 0 || index >= kNumPairs) throw std::invalid_argument("pair index out of range");
    return Step{static_cast<State>(index / kNumActions), static_cast<Action>(index % kNumActions)};
}

std::string pair_code(int index) {
    const Step st = pair_from_index(index);
    return std::string(to_code(st.state)) + "_" + to_code(st.action);
}

FeatureVector encode_features(State s, Action a) {
    return {s == State::RT ? 1.0 : 0.0, s == State::RP ? 1.0 : 0.0,
            a == Action::tw ? 1.0 : 0.0, a == Action::rt ? 1.0 : 0.0,
            a == Action::rp ? 1.0 : 0.0};
}

const FeatureMatrix& feature_matrix() {
    static const FeatureMatrix f = [] {
        FeatureMatrix m{};
        for (int p = 0; p < kNumPairs; ++p) {
            const Step st = pair_from_index(p);
            const FeatureVector col = encode_features(st.state, st.action);
            for (int i = 0; i < kNumFeatures; ++i) m[i][p] = col[i];
        }
        return m;
    }();
    return f;
}

RewardVector rewards_from_theta(const ThetaVector& theta, const FeatureMatrix& f) {
    RewardVector r{};
    for (int p = 0; p < kNumPairs; ++p) {
        double v = 0.0;
        for (int i = 0; i < kNumFeatures; ++i) v += theta[i] * f[i][p];
        r[p] = v;
    }
    return r;
}

}  // namespace trollirl
