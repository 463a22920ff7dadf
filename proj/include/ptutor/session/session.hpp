#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptutor/hints/network.hpp"
#include "ptutor/logic/proof_graph.hpp"
#include "ptutor/policy/hint_policy.hpp"
#include "ptutor/session/event.hpp"
#include "ptutor/session/problem_bank.hpp"

namespace ptutor::session {

using policy::Condition;

struct StepOutcome {
  logic::Verdict verdict;
  std::optional<int> node;
  bool completed = false;
  std::optional<policy::HintEvent> justified;
  std::optional<policy::HintEvent> assertion;
  std::string message;
};

/// One student's pass through the study: intro worked examples, pretest,
/// five training levels, posttest. Every command takes the current time from
/// the caller and appends what happened to the session's event log.
///
/// Not thread-safe; callers serialize commands per session.
class Session {
 public:
  /// Positions the session at the first worked example. Throws BankIncomplete
  /// if the bank lacks required problems.
  static Session create(std::string session_id, std::string student, Condition condition,
                        std::shared_ptr<const TutorContent> content, std::uint64_t seed,
                        Timestamp now);

  /// Finishes the current worked example (intro only).
  void advance_example(Timestamp now);

  /// Verifies and applies one step. Unparseable `derived` throws
  /// MalformedFormula; an unknown rule or node id throws InvalidRequest.
  StepOutcome submit_step(std::span<const int> sources, std::string_view rule,
                          std::string_view derived, Timestamp now);

  /// "Get Hint": returns the message-box text. Training only.
  std::string request_hint(Timestamp now);

  void skip_problem(Timestamp now);
  void restart_problem(Timestamp now);
  void delete_assertion(int node, Timestamp now);

  /// Clock tick; may emit an inactivity Message (Messages condition).
  std::optional<std::string> tick(Timestamp now);

  // Observers.
  const std::string& id() const noexcept { return id_; }
  const std::string& student() const noexcept { return student_; }
  Condition condition() const noexcept { return policy_.condition; }
  std::uint64_t seed() const noexcept { return seed_; }
  Phase phase() const noexcept { return phase_; }
  int level() const noexcept { return level_; }
  const Problem* current_problem() const noexcept { return current_; }
  const logic::ProofGraph* graph() const noexcept { return graph_ ? &*graph_ : nullptr; }
  const policy::PolicyState& policy() const noexcept { return policy_; }
  const std::string& message() const noexcept { return message_; }
  int skips_used() const noexcept { return skips_used_; }
  int solved_in_level() const noexcept { return static_cast<int>(solved_.size()); }
  int problems_completed() const noexcept { return completed_total_; }
  bool can_skip() const noexcept;
  bool can_restart() const noexcept;
  bool hints_enabled() const noexcept { return phase_ == Phase::Training && current_ != nullptr; }
  std::span<const Event> events() const noexcept { return events_; }

  /// Hint the Hint Factory would give right now, if any.
  std::optional<hints::HintContent> current_hint() const;

 private:
  Session(std::string id, std::string student, Condition condition,
          std::shared_ptr<const TutorContent> content, std::uint64_t seed);

  Timestamp clamp(Timestamp now) const;
  Event& log(EventKind kind, Timestamp t, nlohmann::ordered_json payload = nlohmann::ordered_json::object());
  void load(const Problem* p, Timestamp now);
  void finish_problem(Timestamp now);
  void enter_level(int level, Timestamp now);
  const Problem* pick_training(const Problem* from, bool after_skip) const;
  void require_active(std::string_view what) const;

  std::string id_;
  std::string student_;
  std::shared_ptr<const TutorContent> content_;
  std::uint64_t seed_ = 0;
  policy::PolicyState policy_;

  Phase phase_ = Phase::Intro;
  int level_ = 0;
  std::size_t cursor_ = 0;  ///< position within intro/pretest/posttest lists
  int skips_used_ = 0;
  int completed_total_ = 0;
  std::set<std::string> attempted_;
  std::set<std::string> solved_;

  const Problem* current_ = nullptr;
  std::optional<logic::ProofGraph> graph_;
  std::vector<hints::StateKey> history_;
  std::string message_;
  std::vector<Event> events_;
};

/// Rebuilds a session by re-executing the commands recorded in its log.
/// Throws InvalidRequest if the log does not start with a session_start.
Session replay_session(std::span<const Event> log, std::shared_ptr<const TutorContent> content);

}  // namespace ptutor::session
