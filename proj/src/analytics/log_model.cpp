#include "ptutor/analytics/log_model.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "ptutor/error.hpp"

namespace ptutor::analytics {

std::vector<StudentLog> group_sessions(std::span<const Event> events) {
  std::vector<StudentLog> out;
  std::map<std::string, std::size_t> index;
  for (const Event& e : events) {
    auto it = index.find(e.session);
    if (it == index.end()) {
      if (e.kind != EventKind::SessionStart) {
        throw InvalidRequest("session " + e.session + " does not begin with session_start");
      }
      StudentLog log;
      log.session = e.session;
      log.student = e.payload.at("student").get<std::string>();
      const auto c = policy::parse_condition(e.payload.at("condition").get<std::string>());
      if (!c) throw InvalidRequest("session " + e.session + " has an unknown condition");
      log.condition = *c;
      it = index.emplace(e.session, out.size()).first;
      out.push_back(std::move(log));
    }
    out[it->second].events.push_back(e);
  }
  return out;
}

std::vector<StudentLog> load_logs(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Event> all;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw InvalidRequest("cannot read " + f.string());
    auto events = session::read_events(in);
    all.insert(all.end(), std::make_move_iterator(events.begin()), std::make_move_iterator(events.end()));
  }
  return group_sessions(all);
}

std::vector<Attempt> split_attempts(const StudentLog& log) {
  std::vector<Attempt> out;
  std::map<std::string, logic::ProblemStatement> statements;
  for (const Event& e : log.events) {
    if (e.kind == EventKind::ProblemStart) {
      logic::ProblemStatement ps;
      ps.id = e.problem;
      for (const auto& p : e.payload.at("premises")) ps.premises.push_back(logic::parse_formula(p.get<std::string>()));
      ps.conclusion = logic::parse_formula(e.payload.at("conclusion").get<std::string>());
      statements[e.problem] = ps;
      Attempt a;
      a.problem = e.problem;
      a.phase = e.phase;
      a.level = e.level;
      a.statement = std::move(ps);
      a.events.push_back(&e);
      out.push_back(std::move(a));
      continue;
    }
    if (out.empty() || e.kind == EventKind::SessionStart) continue;
    if (e.kind == EventKind::Restart) {
      out.back().restarted = true;
      Attempt a;
      a.problem = e.problem;
      a.phase = e.phase;
      a.level = e.level;
      a.statement = statements.at(e.problem);
      a.events.push_back(&e);
      out.push_back(std::move(a));
      continue;
    }
    Attempt& cur = out.back();
    cur.events.push_back(&e);
    if (e.kind == EventKind::ProblemComplete) cur.completed = true;
    if (e.kind == EventKind::Skip) cur.skipped = true;
  }
  return out;
}

logic::ProofGraph rebuild_graph(const Attempt& a) {
  logic::ProofGraph g(a.statement);
  for (const Event* e : a.events) {
    if (e->kind != EventKind::StepValid) continue;
    const auto rule = logic::parse_rule(e->payload.at("rule").get<std::string>());
    if (!rule) throw InvalidRequest("unknown rule in log");
    logic::Justification why{*rule, e->payload.at("sources").get<std::vector<int>>()};
    g.add_derived(logic::parse_formula(e->payload.at("statement").get<std::string>()), std::move(why));
  }
  return g;
}

}  // namespace ptutor::analytics
