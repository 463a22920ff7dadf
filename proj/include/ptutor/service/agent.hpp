#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "ptutor/session/session.hpp"

namespace ptutor::service {

enum class AgentKind { FollowHints, IgnoreHints, Random };
std::string_view agent_kind_name(AgentKind k);
std::optional<AgentKind> parse_agent_kind(std::string_view s);  ///< "follow", "ignore", "random"

/// Behaviour knobs of a simulated student. Rates are per decision.
struct AgentPolicy {
  AgentKind kind = AgentKind::FollowHints;
  std::int64_t think_min_ms = 4'000;
  std::int64_t think_max_ms = 40'000;
  double stall_rate = 0.08;  ///< chance of a long pause (60-240 s)
  double error_rate = 0.08;
  double hint_request_rate = 0.04;
  double skip_rate = 0.03;
  double restart_rate = 0.015;
  double delete_rate = 0.2;  ///< IgnoreHints only: dropping a pending assertion
  int random_steps_per_attempt = 3;
};

/// One proposed step, in workspace terms.
struct PlannedStep {
  std::vector<int> sources;
  logic::Rule rule;
  logic::Formula derived;
};

/// Next expert step not yet in the workspace whose sources all are.
std::optional<PlannedStep> next_expert_step(const session::Session& s);

/// A one-rule derivation of `target` from the workspace's justified nodes.
std::optional<PlannedStep> step_towards(const session::Session& s, const logic::Formula& target);

/// Drives a session with a virtual clock. Ticks the session every 5 s of
/// idle time, as the server sweep would.
class Agent {
 public:
  static constexpr policy::Timestamp kSweep{5'000};

  Agent(AgentPolicy policy, std::uint64_t seed);

  /// Performs one user action, advancing `now`. Returns false once the
  /// session is done.
  bool act(session::Session& s, policy::Timestamp& now);

  const AgentPolicy& policy() const noexcept { return policy_; }

 private:
  bool chance(double p);
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  void think(session::Session& s, policy::Timestamp& now);
  void submit(session::Session& s, const PlannedStep& step, policy::Timestamp now);

  AgentPolicy policy_;
  std::mt19937_64 rng_;
  std::string attempt_key_;
  int random_steps_ = 0;
};

}  // namespace ptutor::service
