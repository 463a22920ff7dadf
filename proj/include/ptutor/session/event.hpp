#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ptutor/policy/hint_policy.hpp"
#include "ptutor/session/problem_bank.hpp"

namespace ptutor::session {

using policy::Timestamp;

enum class EventKind {
  SessionStart,
  ProblemStart,
  WorkedExample,
  StepValid,
  StepError,
  HintGiven,
  HintJustified,
  Skip,
  Restart,
  ProblemComplete,
  AssertionDeleted,
};

std::string_view event_kind_name(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

/// One append-only log record.
///
/// Serialized as one JSON object per line with keys in this order:
/// `t` (ms), `session`, `phase`, `level`, `problem`, `kind`, `payload`.
struct Event {
  Timestamp t{0};
  std::string session;
  Phase phase = Phase::Intro;
  int level = 0;
  std::string problem;
  EventKind kind = EventKind::SessionStart;
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();

  friend bool operator==(const Event&, const Event&) = default;
};

std::string to_line(const Event& e);
/// Throws InvalidRequest on a malformed line.
Event parse_event_line(std::string_view line);

std::vector<Event> read_events(std::istream& in);
void write_events(std::ostream& out, const std::vector<Event>& events);

}  // namespace ptutor::session
