#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ptutor/service/agent.hpp"

namespace ptutor::service {

struct CohortOptions {
  int n = 10;
  std::string condition = "mixed";  ///< assertions | messages | mixed
  std::string policy = "follow";    ///< follow | ignore | random | mixed
  std::uint64_t seed = 1;
  AgentPolicy base;                 ///< kind is overridden per student
  int max_actions = 50'000;         ///< per session
};

struct StudentPlan {
  int index = 0;
  std::string session_id;
  std::string student;
  policy::Condition condition = policy::Condition::Assertions;
  AgentPolicy agent;
  std::uint64_t session_seed = 0;
  std::uint64_t agent_seed = 0;
};

/// Per-student assignments, fixed by the options alone. "mixed" conditions
/// alternate; "mixed" policies draw from the seeded generator.
std::vector<StudentPlan> plan_cohort(const CohortOptions& opts);

/// Called after every agent action with the events that action appended.
using Observer = std::function<void(const session::Session&, std::span<const session::Event>)>;

/// Runs one session to completion. Engine errors are rethrown as
/// std::runtime_error naming the session.
session::Session simulate_student(std::shared_ptr<const session::TutorContent> content, const StudentPlan& plan,
                                  int max_actions = 50'000, const Observer& observe = {});

/// Runs every planned student in order, handing each finished session to `sink`.
void simulate_cohort(std::shared_ptr<const session::TutorContent> content, const CohortOptions& opts,
                     const std::function<void(const StudentPlan&, const session::Session&)>& sink,
                     const Observer& observe = {});

/// Writes `<dir>/<session>.jsonl` per student. Returns the file paths.
std::vector<std::filesystem::path> simulate_to_dir(std::shared_ptr<const session::TutorContent> content,
                                                   const CohortOptions& opts, const std::filesystem::path& dir);

}  // namespace ptutor::service
