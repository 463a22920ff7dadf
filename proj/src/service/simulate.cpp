#include "ptutor/service/simulate.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "ptutor/error.hpp"

namespace ptutor::service {

std::vector<StudentPlan> plan_cohort(const CohortOptions& opts) {
  std::optional<policy::Condition> fixed_condition;
  if (opts.condition != "mixed") {
    fixed_condition = policy::parse_condition(opts.condition);
    if (!fixed_condition) throw InvalidRequest("unknown condition '" + opts.condition + "'");
  }
  std::optional<AgentKind> fixed_kind;
  if (opts.policy != "mixed") {
    fixed_kind = parse_agent_kind(opts.policy);
    if (!fixed_kind) throw InvalidRequest("unknown policy '" + opts.policy + "'");
  }
  std::mt19937_64 rng(opts.seed);
  std::vector<StudentPlan> out;
  for (int i = 0; i < opts.n; ++i) {
    StudentPlan p;
    p.index = i;
    char id[32];
    std::snprintf(id, sizeof id, "sim%05d", i + 1);
    p.session_id = id;
    p.student = "student" + std::to_string(i + 1);
    p.condition = fixed_condition.value_or(i % 2 == 0 ? policy::Condition::Assertions : policy::Condition::Messages);
    p.agent = opts.base;
    const std::uint64_t draw = rng();
    p.agent.kind = fixed_kind.value_or(static_cast<AgentKind>(draw % 3));
    p.session_seed = rng();
    p.agent_seed = rng();
    out.push_back(std::move(p));
  }
  return out;
}

session::Session simulate_student(std::shared_ptr<const session::TutorContent> content, const StudentPlan& plan,
                                  int max_actions, const Observer& observe) {
  try {
    policy::Timestamp now{0};
    session::Session s =
        session::Session::create(plan.session_id, plan.student, plan.condition, std::move(content), plan.session_seed, now);
    Agent agent(plan.agent, plan.agent_seed);
    std::size_t seen = 0;
    if (observe) observe(s, s.events());
    seen = s.events().size();
    for (int i = 0; i < max_actions; ++i) {
      if (!agent.act(s, now)) return s;
      if (observe) observe(s, s.events().subspan(seen));
      seen = s.events().size();
    }
    throw std::runtime_error("did not finish within " + std::to_string(max_actions) + " actions");
  } catch (const std::exception& e) {
    throw std::runtime_error("simulation of session " + plan.session_id + " failed: " + e.what());
  }
}

void simulate_cohort(std::shared_ptr<const session::TutorContent> content, const CohortOptions& opts,
                     const std::function<void(const StudentPlan&, const session::Session&)>& sink,
                     const Observer& observe) {
  for (const auto& plan : plan_cohort(opts)) {
    const session::Session s = simulate_student(content, plan, opts.max_actions, observe);
    if (sink) sink(plan, s);
  }
}

std::vector<std::filesystem::path> simulate_to_dir(std::shared_ptr<const session::TutorContent> content,
                                                   const CohortOptions& opts, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> files;
  simulate_cohort(std::move(content), opts, [&](const StudentPlan& plan, const session::Session& s) {
    const auto path = dir / (plan.session_id + ".jsonl");
    std::ofstream out(path, std::ios::trunc);
    for (const auto& e : s.events()) out << session::to_line(e) << '\n';
    if (!out) throw std::runtime_error("cannot write " + path.string());
    files.push_back(path);
  });
  return files;
}

}  // namespace ptutor::service
