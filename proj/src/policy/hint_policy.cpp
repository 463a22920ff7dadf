#include "ptutor/policy/hint_policy.hpp"

namespace ptutor::policy {

std::string_view condition_name(Condition c) {
  return c == Condition::Assertions ? "assertions" : "messages";
}

std::optional<Condition> parse_condition(std::string_view s) {
  if (s == "assertions") return Condition::Assertions;
  if (s == "messages") return Condition::Messages;
  return std::nullopt;
}

std::string_view hint_kind_name(HintKind k) {
  switch (k) {
    case HintKind::OnDemand: return "on_demand";
    case HintKind::Message: return "message";
    case HintKind::Assertion: return "assertion";
  }
  return "?";
}

std::optional<HintKind> parse_hint_kind(std::string_view s) {
  if (s == "on_demand") return HintKind::OnDemand;
  if (s == "message") return HintKind::Message;
  if (s == "assertion") return HintKind::Assertion;
  return std::nullopt;
}

std::string derive_prompt(const logic::Formula& statement) {
  return "Try to derive " + logic::render(statement);
}

AssertionDecision schedule_assertion(PolicyState& ps, const hints::HintContent& hint, Timestamp now) {
  if (ps.pending || ps.consecutive_assertions >= kMaxConsecutiveAssertions) {
    ps.consecutive_assertions = 0;
    return AssertionDecision::Skip;
  }
  // Lowest bit of the raw engine output: exactly one half, and reproducible
  // across standard libraries (distributions are not).
  const bool heads = (ps.rng() & 1u) != 0;
  if (!heads) {
    ps.consecutive_assertions = 0;
    return AssertionDecision::Skip;
  }
  ++ps.consecutive_assertions;
  ps.pending = HintEvent{HintKind::Assertion, hint, now, std::nullopt, std::nullopt, 0};
  return AssertionDecision::Issue;
}

std::optional<std::string> check_inactivity(PolicyState& ps, Timestamp now,
                                            const hints::HintContent& hint) {
  if (ps.condition != Condition::Messages || ps.pending) return std::nullopt;
  if (now - ps.last_activity < kInactivityThreshold) return std::nullopt;
  ps.pending = HintEvent{HintKind::Message, hint, now, std::nullopt, std::nullopt, 0};
  return derive_prompt(hint.statement);
}

std::string request_hint(PolicyState& ps, const hints::HintContent& hint, Timestamp now) {
  note_activity(ps, now);
  return derive_prompt(hint.statement);
}

std::optional<HintEvent> resolve_justification(PolicyState& ps, const logic::Formula& verified,
                                               Timestamp now) {
  if (!ps.pending || !(ps.pending->content.statement == verified)) return std::nullopt;
  HintEvent done = std::move(*ps.pending);
  ps.pending.reset();
  done.justified_at = now;
  return done;
}

void note_activity(PolicyState& ps, Timestamp now) {
  if (now > ps.last_activity) ps.last_activity = now;
}

std::optional<HintEvent> clear_pending(PolicyState& ps) {
  std::optional<HintEvent> out = std::move(ps.pending);
  ps.pending.reset();
  return out;
}

}  // namespace ptutor::policy
