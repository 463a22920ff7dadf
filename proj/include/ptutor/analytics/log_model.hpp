#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ptutor/logic/proof_graph.hpp"
#include "ptutor/session/event.hpp"

namespace ptutor::analytics {

using policy::Timestamp;
using session::Event;
using session::EventKind;
using session::Phase;

/// Longest stretch of time a single interaction may account for.
inline constexpr Timestamp kInteractionCap{300'000};

inline Timestamp capped_gap(Timestamp from, Timestamp to) {
  const Timestamp gap = to - from;
  if (gap < Timestamp{0}) return Timestamp{0};
  return gap < kInteractionCap ? gap : kInteractionCap;
}

inline double minutes(Timestamp t) { return static_cast<double>(t.count()) / 60'000.0; }

/// The events of one session, in log order.
struct StudentLog {
  std::string session;
  std::string student;
  policy::Condition condition = policy::Condition::Assertions;
  std::vector<Event> events;
};

/// Splits a mixed event stream by session id, keeping first-seen order.
/// Each session must open with session_start.
std::vector<StudentLog> group_sessions(std::span<const Event> events);

/// Reads every `*.jsonl` file under `dir`, in filename order.
std::vector<StudentLog> load_logs(const std::filesystem::path& dir);

/// One try at a problem: from its problem_start or a restart up to the next
/// of either. Skip and completion events stay with the attempt they end.
struct Attempt {
  std::string problem;
  Phase phase = Phase::Intro;
  int level = 0;
  logic::ProblemStatement statement;
  std::vector<const Event*> events;
  bool completed = false;
  bool restarted = false;  ///< ended by a restart
  bool skipped = false;
};

/// `log` must outlive the result.
std::vector<Attempt> split_attempts(const StudentLog& log);

/// Rebuilds the workspace from the attempt's verified steps.
logic::ProofGraph rebuild_graph(const Attempt& a);

}  // namespace ptutor::analytics
