#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace trollirl {

// Environment feedback: RT = content re-shared, RP = replied/mentioned,
// NT = no reaction. Index order is fixed and used everywhere.
enum class State : int { RT = 0, RP = 1, NT = 2 };

// Account activity: tw = original tweet, rt = retweet, rp = reply/mention,
// nt = silence.
enum class Action : int { tw = 0, rt = 1, rp = 2, nt = 3 };

inline constexpr int kNumStates = 3;
inline constexpr int kNumActions = 4;
inline constexpr int kNumPairs = kNumStates * kNumActions;
inline constexpr int kNumFeatures = 5;

enum class EventKind : int {
    active_tweet = 0,
    active_retweet = 1,
    active_reply_or_mention = 2,
    passive_retweet = 3,
    passive_reply_or_mention = 4,
};

inline bool is_active(EventKind k) {
    return k == EventKind::active_tweet || k == EventKind::active_retweet ||
           k == EventKind::active_reply_or_mention;
}

const char* to_code(State s);
const char* to_code(Action a);
const char* to_string(EventKind k);

// Throw std::invalid_argument on unknown codes.
State state_from_code(const std::string& code);
Action action_from_code(const std::string& code);
EventKind event_kind_from_string(const std::string& s);

// One timestamped involvement of an account, active or passive.
struct ActivityEvent {
    std::string account_id;
    std::int64_t ts = 0;  // epoch milliseconds
    EventKind kind = EventKind::active_tweet;
    std::string label;  // optional "troll"/"user", empty if absent

    bool operator==(const ActivityEvent&) const = default;
};

struct Step {
    State state = State::NT;
    Action action = Action::nt;

    bool operator==(const Step&) const = default;
};

// Observed behavior of one account: chronological (state, action) pairs.
struct Trajectory {
    std::string account_id;
    std::vector<Step> steps;
};

// Flat index of a state-action pair in [0, 12).
inline int pair_index(State s, Action a) {
    return kNumActions * static_cast<int>(s) + static_cast<int>(a);
}

Step pair_from_index(int index);

// Code like "RT_tw" for the pair at the given flat index.
std::string pair_code(int index);

using FeatureVector = std::array<double, kNumFeatures>;

// Binary encoding (RTflag, RPflag, twFlag, rtFlag, rpFlag). NT and nt map
// to all-zero in their respective blocks.
FeatureVector encode_features(State s, Action a);

// 5x12 matrix whose column p is encode_features of the pair at index p.
using FeatureMatrix = std::array<std::array<double, kNumPairs>, kNumFeatures>;

const FeatureMatrix& feature_matrix();

using RewardVector = std::array<double, kNumPairs>;
using ThetaVector = std::array<double, kNumFeatures>;

// r[p] = sum_i theta[i] * f[i][p]
RewardVector rewards_from_theta(const ThetaVector& theta, const FeatureMatrix& f);

// Per-account transition probabilities T[s][a][s'] with the raw triplet counts
// they were estimated from. Rows with zero counts hold the uniform fallback.
struct TransitionModel {
    std::array<std::array<std::array<double, kNumStates>, kNumActions>, kNumStates> probs{};
    std::array<std::array<std::array<std::int64_t, kNumStates>, kNumActions>, kNumStates> counts{};

    double operator()(State s, Action a, State s2) const {
        return probs[static_cast<int>(s)][static_cast<int>(a)][static_cast<int>(s2)];
    }
};

}  // namespace trollirl
