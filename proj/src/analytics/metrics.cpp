#include "ptutor/analytics/metrics.hpp"

#include <set>
#include <stdexcept>

#include "ptutor/error.hpp"

namespace ptutor::analytics {

using policy::HintKind;

std::optional<double> HintCounts::hjr() const {
  if (given == 0) return std::nullopt;
  return static_cast<double>(justified) / given;
}

std::optional<double> HintCounts::hnr() const {
  if (given == 0) return std::nullopt;
  return static_cast<double>(needed) / given;
}

HintCounts& HintCounts::operator+=(const HintCounts& o) {
  given += o.given;
  justified += o.justified;
  needed += o.needed;
  return *this;
}

HintMetrics compute_hint_metrics(const StudentLog& log) {
  HintMetrics m;
  for (HintKind k : {HintKind::OnDemand, HintKind::Message, HintKind::Assertion}) m.by_kind[k];

  for (const Attempt& a : split_attempts(log)) {
    if (a.phase != Phase::Training) continue;
    std::set<int> needed;
    if (a.completed) needed = logic::needed_set(rebuild_graph(a));

    for (std::size_t i = 0; i < a.events.size(); ++i) {
      const Event& e = *a.events[i];
      if (e.kind != EventKind::HintGiven) continue;
      const auto kind = policy::parse_hint_kind(e.payload.at("hint_kind").get<std::string>());
      if (!kind) throw InvalidRequest("unknown hint kind in log");
      const std::string statement = e.payload.at("statement").get<std::string>();
      HintCounts c;
      c.given = 1;
      for (std::size_t j = i + 1; j < a.events.size(); ++j) {
        const Event& later = *a.events[j];
        if (later.kind != EventKind::StepValid || later.payload.at("statement") != statement) continue;
        c.justified = 1;
        c.needed = needed.contains(later.payload.at("node").get<int>()) ? 1 : 0;
        break;
      }
      m.by_kind[*kind] += c;
      m.total += c;
      if (*kind != HintKind::OnDemand) m.unsolicited += c;
    }
  }
  const HintCounts& t = m.total;
  if (!(t.needed <= t.justified && t.justified <= t.given)) {
    throw std::logic_error("hint counts violate needed <= justified <= given");
  }
  return m;
}

PerformanceMetrics performance_metrics(const StudentLog& log, Phase phase) {
  int required = 0;
  if (phase == Phase::Pretest) required = session::kPretestProblems;
  else if (phase == Phase::Posttest) required = session::kPosttestProblems;
  else throw InvalidRequest("performance is measured on the pretest or posttest only");

  PerformanceMetrics m;
  long total_length = 0;
  Timestamp time{0};
  const Event* prev = nullptr;
  for (const Event& e : log.events) {
    if (e.phase != phase) continue;
    if (prev != nullptr) time += capped_gap(prev->t, e.t);
    prev = &e;
    switch (e.kind) {
      case EventKind::StepValid: ++m.valid_steps; break;
      case EventKind::StepError: ++m.error_steps; break;
      case EventKind::ProblemComplete:
        ++m.completed;
        total_length += e.payload.at("length").get<int>();
        break;
      default: break;
    }
  }
  if (m.completed < required) {
    throw IncompletePhase(std::string(session::phase_name(phase)) + ": " + std::to_string(m.completed) + " of " +
                          std::to_string(required) + " problems completed");
  }
  m.avg_length = static_cast<double>(total_length) / m.completed;
  m.minutes = minutes(time);
  const int applications = m.valid_steps + m.error_steps;
  if (applications > 0) m.accuracy = static_cast<double>(m.valid_steps) / applications;
  return m;
}

EffortMetrics effort_metrics(const StudentLog& log) {
  std::set<std::string> solved;
  std::set<std::string> skipped;
  std::map<std::string, Timestamp> time_on;
  std::map<std::string, int> restarts;
  const Event* prev = nullptr;
  for (const Event& e : log.events) {
    if (e.phase != Phase::Training) {
      prev = nullptr;
      continue;
    }
    // A gap belongs to the problem that was on screen while it elapsed.
    if (prev != nullptr) time_on[prev->problem] += capped_gap(prev->t, e.t);
    prev = &e;
    if (e.kind == EventKind::ProblemComplete) solved.insert(e.problem);
    if (e.kind == EventKind::Skip) skipped.insert(e.problem);
    if (e.kind == EventKind::Restart) ++restarts[e.problem];
  }
  EffortMetrics m;
  Timestamp unsolved{0};
  for (const auto& p : skipped) {
    if (!solved.contains(p)) unsolved += time_on[p];
  }
  m.unsolved_minutes = minutes(unsolved);
  for (const auto& [p, n] : restarts) {
    if (solved.contains(p)) m.restarts += n;
  }
  return m;
}

}  // namespace ptutor::analytics
