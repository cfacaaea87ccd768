#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "trollirl/types.hpp"

namespace trollirl {

// Reads one JSONL event per line. Throws ParseError (with the 1-based line
// number) on the first malformed line; blank lines are skipped.
std::vector<ActivityEvent> parse_activity_log(std::istream& in);
std::vector<ActivityEvent> parse_activity_log_file(const std::string& path);

void write_activity_log(std::ostream& out, const std::vector<ActivityEvent>& events);

// Keeps accounts with at least k active AND at least k passive events.
// Per-account events come back sorted by timestamp, ties in input order.
std::map<std::string, std::vector<ActivityEvent>> filter_accounts(
    const std::vector<ActivityEvent>& events, int k);

// Pairs the sorted event stream into (state, action) steps. Passive events
// set the pending state (initially NT); an active event consumes it and
// resets to NT; a passive event arriving on top of a pending one, or a
// pending one left at the end, flushes as (state, nt).
Trajectory build_trajectory(const std::string& account_id,
                            const std::vector<ActivityEvent>& events);

// Triplet counts over consecutive steps, row-normalized. Rows that were
// never observed fall back to the uniform distribution. Requires at least
// two steps.
TransitionModel estimate_transitions(const Trajectory& traj);

// JSONL with account_id and steps as [state, action] code pairs.
void write_trajectories(std::ostream& out, const std::vector<Trajectory>& trajectories);
std::vector<Trajectory> read_trajectories(std::istream& in);

}  // namespace trollirl
