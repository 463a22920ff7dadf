#include "ptutor/error.hpp"
#include "ptutor/session/session.hpp"

namespace ptutor::session {

Session replay_session(std::span<const Event> log, std::shared_ptr<const TutorContent> content) {
  if (log.empty() || log.front().kind != EventKind::SessionStart) {
    throw InvalidRequest("event log must begin with session_start");
  }
  const Event& start = log.front();
  const auto condition = policy::parse_condition(start.payload.at("condition").get<std::string>());
  if (!condition) throw InvalidRequest("session_start has an unknown condition");
  Session s = Session::create(start.session, start.payload.at("student").get<std::string>(), *condition,
                              std::move(content), start.payload.at("seed").get<std::uint64_t>(), start.t);

  // Only commands are re-executed; everything else is their consequence.
  for (const Event& e : log.subspan(1)) {
    switch (e.kind) {
      case EventKind::WorkedExample:
        s.advance_example(e.t);
        break;
      case EventKind::StepValid:
      case EventKind::StepError: {
        const auto sources = e.payload.at("sources").get<std::vector<int>>();
        s.submit_step(sources, e.payload.at("rule").get<std::string>(),
                      e.payload.at("statement").get<std::string>(), e.t);
        break;
      }
      case EventKind::HintGiven: {
        const auto kind = policy::parse_hint_kind(e.payload.at("hint_kind").get<std::string>());
        if (kind == policy::HintKind::OnDemand) s.request_hint(e.t);
        if (kind == policy::HintKind::Message) s.tick(e.t);
        break;
      }
      case EventKind::Skip:
        s.skip_problem(e.t);
        break;
      case EventKind::Restart:
        s.restart_problem(e.t);
        break;
      case EventKind::AssertionDeleted:
        s.delete_assertion(e.payload.at("node").get<int>(), e.t);
        break;
      case EventKind::SessionStart:
      case EventKind::ProblemStart:
      case EventKind::HintJustified:
      case EventKind::ProblemComplete:
        break;
    }
  }
  return s;
}

}  // namespace ptutor::session
