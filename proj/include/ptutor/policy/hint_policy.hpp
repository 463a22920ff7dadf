#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "ptutor/hints/network.hpp"

namespace ptutor::policy {

/// Milliseconds on the session's clock (virtual in simulations).
using Timestamp = std::chrono::milliseconds;

enum class Condition { Assertions, Messages };
enum class HintKind { OnDemand, Message, Assertion };

std::string_view condition_name(Condition c);
std::optional<Condition> parse_condition(std::string_view s);
std::string_view hint_kind_name(HintKind k);
std::optional<HintKind> parse_hint_kind(std::string_view s);

inline constexpr Timestamp kInactivityThreshold{60'000};
inline constexpr int kMaxConsecutiveAssertions = 2;
inline constexpr std::string_view kAssertionPrompt = "Try to justify the added goal";

/// "Try to derive {HC}"
std::string derive_prompt(const logic::Formula& statement);

struct HintEvent {
  HintKind kind = HintKind::OnDemand;
  hints::HintContent content;
  Timestamp issued_at{0};
  std::optional<Timestamp> justified_at;
  std::optional<bool> needed;
  int node = 0;  ///< workspace id of an Assertion's cyan node
};

/// Hint-delivery state owned by one session.
struct PolicyState {
  PolicyState(Condition condition, std::uint64_t seed) : condition(condition), rng(seed) {}

  Condition condition;
  int consecutive_assertions = 0;
  std::optional<HintEvent> pending;  ///< the one unsolicited hint on screen
  Timestamp last_activity{0};
  std::mt19937_64 rng;
};

enum class AssertionDecision { Issue, Skip };

/// Called once per verified training step in the Assertions condition.
/// Skips while an unsolicited hint is pending or after two assertion steps in
/// a row; otherwise flips a fair coin. Issuing makes `hint` pending.
AssertionDecision schedule_assertion(PolicyState& ps, const hints::HintContent& hint, Timestamp now);

/// Emits an inactivity Message once the student has been idle for a minute
/// and nothing unsolicited is pending. The content is frozen from then on.
std::optional<std::string> check_inactivity(PolicyState& ps, Timestamp now,
                                            const hints::HintContent& hint);

/// On-demand hint. Never becomes pending.
std::string request_hint(PolicyState& ps, const hints::HintContent& hint, Timestamp now);

/// After a verified step: if it derived the pending hint's statement the hint
/// is justified and returned, and nothing is pending any more.
std::optional<HintEvent> resolve_justification(PolicyState& ps, const logic::Formula& verified,
                                               Timestamp now);

void note_activity(PolicyState& ps, Timestamp now);

/// Restart, skip or assertion deletion: drops the pending hint unjustified.
std::optional<HintEvent> clear_pending(PolicyState& ps);

}  // namespace ptutor::policy
