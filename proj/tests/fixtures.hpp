#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "ptutor/analytics/log_model.hpp"
#include "ptutor/session/bank_builder.hpp"
#include "ptutor/session/session.hpp"

namespace fixture {

using namespace std::chrono_literals;
using ptutor::policy::Timestamp;

/// Every study slot holds the worked-example problem (ids `worked@<slot>`).
inline std::shared_ptr<const ptutor::session::TutorContent> worked_content() {
  static const auto content = [] {
    std::vector<ptutor::session::Problem> one = {ptutor::session::worked_problem()};
    return ptutor::session::make_content(ptutor::session::study_bank_from(one));
  }();
  return content;
}

struct Move {
  std::vector<int> sources;
  const char* rule;
  const char* derived;
};

/// The six-step walkthrough on a fresh workspace (premises are nodes 1-4).
inline const std::vector<Move>& walkthrough() {
  static const std::vector<Move> moves = {
      {{4}, "Simp", "D"},      {{4}, "Simp", "~E"},     {{1}, "Impl", "~A|C"},
      {{3, 6}, "MT", "~C"},    {{7, 8}, "DS", "~A"},    {{2, 9}, "Conj", "~A&B"},
  };
  return moves;
}

/// Solves the current (fresh) problem with the walkthrough, 10 s per step.
inline void solve(ptutor::session::Session& s, Timestamp& now) {
  for (const auto& m : walkthrough()) {
    now += 10s;
    s.submit_step(m.sources, m.rule, m.derived, now);
  }
}

inline void finish_intro(ptutor::session::Session& s, Timestamp& now) {
  while (s.phase() == ptutor::session::Phase::Intro) {
    now += 30s;
    s.advance_example(now);
  }
}

// ---- hand-crafted logs -----------------------------------------------------

using ptutor::session::Event;
using ptutor::session::EventKind;
using ptutor::session::Phase;

inline Event ev(int seconds, Phase phase, const char* problem, EventKind kind,
                nlohmann::ordered_json payload = nlohmann::ordered_json::object()) {
  Event e;
  e.t = Timestamp(seconds * 1000L);
  e.session = "x";
  e.phase = phase;
  e.level = phase == Phase::Training ? 1 : 0;
  e.problem = problem;
  e.kind = kind;
  e.payload = std::move(payload);
  return e;
}

inline nlohmann::ordered_json len(int n) { return {{"length", n}}; }

inline ptutor::analytics::StudentLog log_of(std::vector<Event> body) {
  nlohmann::ordered_json start;
  start["student"] = "x";
  start["condition"] = "messages";
  start["seed"] = 1;
  std::vector<Event> all = {ev(0, Phase::Intro, "", EventKind::SessionStart, start)};
  all.insert(all.end(), body.begin(), body.end());
  return ptutor::analytics::group_sessions(all).front();
}

/// Messages session on the worked-example problem, scripted so every hint
/// outcome is known in advance. Hand tally:
///   on-demand D, voided by the restart      given
///   Message D, derived; D is not needed     given, justified
///   on-demand ~E, derived and needed        given, justified, needed
inline ptutor::analytics::StudentLog scripted_hints() {
  auto s = ptutor::session::Session::create("h", "stu", ptutor::policy::Condition::Messages, worked_content(), 1,
                                            Timestamp{0});
  Timestamp now{0};
  finish_intro(s, now);
  while (s.phase() == Phase::Pretest) solve(s, now);

  s.request_hint(now += 1s);
  s.restart_problem(now += 1s);
  if (!s.tick(now + 60s)) throw std::logic_error("expected an inactivity message");
  now += 61s;
  s.submit_step(std::vector<int>{4}, "Simp", "D", now);
  s.request_hint(now += 1s);
  s.submit_step(std::vector<int>{4}, "Simp", "~E", now += 1s);
  const auto& rest = walkthrough();
  for (std::size_t i = 2; i < rest.size(); ++i) s.submit_step(rest[i].sources, rest[i].rule, rest[i].derived, now += 5s);

  ptutor::analytics::StudentLog log;
  log.session = s.id();
  log.student = s.student();
  log.condition = s.condition();
  log.events.assign(s.events().begin(), s.events().end());
  return log;
}

/// Four posttest problems, five valid steps and one error; one 700 s gap.
/// Capped time is 600 s; lengths 2, 1, 1, 1.
inline std::vector<Event> crafted_posttest() {
  return {
      ev(0, Phase::Posttest, "p1", EventKind::ProblemStart),
      ev(30, Phase::Posttest, "p1", EventKind::StepValid),
      ev(730, Phase::Posttest, "p1", EventKind::StepError),
      ev(760, Phase::Posttest, "p1", EventKind::StepValid),
      ev(760, Phase::Posttest, "p1", EventKind::ProblemComplete, len(2)),
      ev(760, Phase::Posttest, "p2", EventKind::ProblemStart),
      ev(780, Phase::Posttest, "p2", EventKind::StepValid),
      ev(780, Phase::Posttest, "p2", EventKind::ProblemComplete, len(1)),
      ev(780, Phase::Posttest, "p3", EventKind::ProblemStart),
      ev(800, Phase::Posttest, "p3", EventKind::StepValid),
      ev(800, Phase::Posttest, "p3", EventKind::ProblemComplete, len(1)),
      ev(800, Phase::Posttest, "p4", EventKind::ProblemStart),
      ev(1000, Phase::Posttest, "p4", EventKind::StepValid),
      ev(1000, Phase::Posttest, "p4", EventKind::ProblemComplete, len(1)),
  };
}

/// Two problems skipped for 4 minutes each and never solved; one skipped but
/// solved later; one restart on a solved problem and one on an abandoned one.
inline std::vector<Event> crafted_training() {
  return {
      ev(0, Phase::Training, "a", EventKind::ProblemStart),
      ev(240, Phase::Training, "a", EventKind::Skip),
      ev(240, Phase::Training, "b", EventKind::ProblemStart),
      ev(480, Phase::Training, "b", EventKind::Skip),
      ev(480, Phase::Training, "e", EventKind::ProblemStart),
      ev(540, Phase::Training, "e", EventKind::Skip),
      ev(540, Phase::Training, "c", EventKind::ProblemStart),
      ev(560, Phase::Training, "c", EventKind::Restart),
      ev(570, Phase::Training, "c", EventKind::StepValid),
      ev(580, Phase::Training, "c", EventKind::ProblemComplete, len(1)),
      ev(580, Phase::Training, "d", EventKind::ProblemStart),
      ev(580, Phase::Training, "d", EventKind::Restart),
      ev(580, Phase::Training, "d", EventKind::Skip),
      ev(580, Phase::Training, "e", EventKind::ProblemStart),
      ev(600, Phase::Training, "e", EventKind::ProblemComplete, len(1)),
  };
}

}  // namespace fixture
