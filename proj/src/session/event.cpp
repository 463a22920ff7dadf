#include "ptutor/session/event.hpp"

#include <array>
#include <istream>
#include <ostream>

#include "ptutor/error.hpp"

namespace ptutor::session {

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 11> kKindNames{{
    {EventKind::SessionStart, "session_start"},
    {EventKind::ProblemStart, "problem_start"},
    {EventKind::WorkedExample, "worked_example"},
    {EventKind::StepValid, "step_valid"},
    {EventKind::StepError, "step_error"},
    {EventKind::HintGiven, "hint_given"},
    {EventKind::HintJustified, "hint_justified"},
    {EventKind::Skip, "skip"},
    {EventKind::Restart, "restart"},
    {EventKind::ProblemComplete, "problem_complete"},
    {EventKind::AssertionDeleted, "assertion_deleted"},
}};

}  // namespace

std::string_view event_kind_name(EventKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (const auto& [kind, name] : kKindNames) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

std::string to_line(const Event& e) {
  nlohmann::ordered_json j;
  j["t"] = e.t.count();
  j["session"] = e.session;
  j["phase"] = std::string(phase_name(e.phase));
  j["level"] = e.level;
  j["problem"] = e.problem;
  j["kind"] = std::string(event_kind_name(e.kind));
  j["payload"] = e.payload;
  return j.dump();
}

Event parse_event_line(std::string_view line) {
  try {
    const auto j = nlohmann::ordered_json::parse(line);
    Event e;
    e.t = Timestamp{j.at("t").get<std::int64_t>()};
    e.session = j.at("session").get<std::string>();
    const auto phase = parse_phase(j.at("phase").get<std::string>());
    const auto kind = parse_event_kind(j.at("kind").get<std::string>());
    if (!phase || !kind) throw InvalidRequest("event has unknown phase or kind");
    e.phase = *phase;
    e.kind = *kind;
    e.level = j.at("level").get<int>();
    e.problem = j.at("problem").get<std::string>();
    e.payload = j.at("payload");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidRequest(std::string("malformed event line: ") + ex.what());
  }
}

std::vector<Event> read_events(std::istream& in) {
  std::vector<Event> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(parse_event_line(line));
  }
  return out;
}

void write_events(std::ostream& out, const std::vector<Event>& events) {
  for (const Event& e : events) out << to_line(e) << '\n';
}

}  // namespace ptutor::session
