#include "ptutor/service/agent.hpp"

#include <algorithm>

#include "ptutor/error.hpp"

namespace ptutor::service {

using logic::Formula;
using session::Phase;

namespace {

std::optional<int> justified_node(const logic::ProofGraph& g, const Formula& f) {
  for (const auto& n : g.nodes()) {
    if (n.id > 0 && n.justified() && n.statement == f) return n.id;
  }
  return std::nullopt;
}

std::optional<PlannedStep> as_step(const logic::ProofGraph& g, logic::Rule rule,
                                   const std::vector<Formula>& sources, const Formula& derived) {
  PlannedStep p{{}, rule, derived};
  for (const auto& src : sources) {
    const auto id = justified_node(g, src);
    if (!id) return std::nullopt;
    p.sources.push_back(*id);
  }
  return p;
}

std::vector<Formula> usable(const logic::ProofGraph& g) {
  std::vector<Formula> out;
  for (const auto& n : g.nodes()) {
    if (n.id > 0 && n.justified()) out.push_back(n.statement);
  }
  return out;
}

}  // namespace

std::string_view agent_kind_name(AgentKind k) {
  switch (k) {
    case AgentKind::FollowHints: return "follow";
    case AgentKind::IgnoreHints: return "ignore";
    case AgentKind::Random: return "random";
  }
  return "?";
}

std::optional<AgentKind> parse_agent_kind(std::string_view s) {
  for (auto k : {AgentKind::FollowHints, AgentKind::IgnoreHints, AgentKind::Random}) {
    if (agent_kind_name(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<PlannedStep> next_expert_step(const session::Session& s) {
  const auto* p = s.current_problem();
  const auto* g = s.graph();
  if (p == nullptr || g == nullptr) return std::nullopt;
  for (const auto& step : p->expert) {
    const bool is_goal = step.derived == g->conclusion();
    if (!is_goal && justified_node(*g, step.derived)) continue;
    if (auto planned = as_step(*g, step.rule, step.sources, step.derived)) return planned;
  }
  return std::nullopt;
}

std::optional<PlannedStep> step_towards(const session::Session& s, const Formula& target) {
  const auto* g = s.graph();
  if (g == nullptr) return std::nullopt;
  const auto have = usable(*g);
  const auto d = logic::find_justification(have, target);
  if (!d) return std::nullopt;
  return as_step(*g, d->rule, d->sources, d->derived);
}

Agent::Agent(AgentPolicy policy, std::uint64_t seed) : policy_(policy), rng_(seed) {}

bool Agent::chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

void Agent::think(session::Session& s, policy::Timestamp& now) {
  std::int64_t wait = policy_.think_min_ms +
                      static_cast<std::int64_t>(below(static_cast<std::uint64_t>(policy_.think_max_ms - policy_.think_min_ms) + 1));
  if (s.phase() != Phase::Intro && chance(policy_.stall_rate)) {
    wait = 60'000 + static_cast<std::int64_t>(below(180'001));
  }
  const policy::Timestamp until = now + policy::Timestamp(wait);
  // Sweeps land on multiples of 5 s of the session clock.
  policy::Timestamp next = (now / kSweep + 1) * kSweep;
  while (next <= until) {
    now = next;
    if (s.tick(now) && policy_.kind == AgentKind::FollowHints) {
      // A Message on screen cuts the pause short for a hint follower.
      now += policy::Timestamp(2'000 + static_cast<std::int64_t>(below(6'001)));
      return;
    }
    next += kSweep;
  }
  now = until;
}

void Agent::submit(session::Session& s, const PlannedStep& step, policy::Timestamp now) {
  s.submit_step(step.sources, logic::rule_name(step.rule), logic::render(step.derived), now);
}

bool Agent::act(session::Session& s, policy::Timestamp& now) {
  if (s.phase() == Phase::Done) return false;
  think(s, now);
  if (s.phase() == Phase::Intro) {
    s.advance_example(now);
    return true;
  }

  const auto* problem = s.current_problem();
  const std::string key = problem->id() + "#" + std::to_string(s.problems_completed());
  if (key != attempt_key_) {
    attempt_key_ = key;
    random_steps_ = 0;
  }

  const auto& pending = s.policy().pending;
  const bool training = s.phase() == Phase::Training;

  if (pending && policy_.kind == AgentKind::FollowHints) {
    if (auto step = step_towards(s, pending->content.statement)) {
      submit(s, *step, now);
      return true;
    }
  }
  if (pending && policy_.kind == AgentKind::IgnoreHints && pending->kind == policy::HintKind::Assertion &&
      chance(policy_.delete_rate)) {
    s.delete_assertion(pending->node, now);
    return true;
  }
  if (training && policy_.kind == AgentKind::FollowHints && chance(policy_.hint_request_rate)) {
    s.request_hint(now);
    if (auto hint = s.current_hint()) {
      if (auto step = step_towards(s, hint->statement)) {
        now += policy::Timestamp(3'000);
        submit(s, *step, now);
      }
    }
    return true;
  }
  if (training && s.can_skip() && chance(policy_.skip_rate)) {
    s.skip_problem(now);
    return true;
  }
  if (s.graph()->derived_count() > 0 && chance(policy_.restart_rate)) {
    s.restart_problem(now);
    return true;
  }

  if (policy_.kind == AgentKind::Random && random_steps_ < policy_.random_steps_per_attempt && chance(0.5)) {
    const auto have = usable(*s.graph());
    std::vector<logic::Derivation> options;
    for (auto& d : logic::enumerate_derivations(have)) {
      if (std::find(have.begin(), have.end(), d.derived) == have.end()) options.push_back(std::move(d));
    }
    if (!options.empty()) {
      const auto& d = options[below(options.size())];
      if (auto step = as_step(*s.graph(), d.rule, d.sources, d.derived)) {
        ++random_steps_;
        submit(s, *step, now);
        return true;
      }
    }
  }

  auto step = next_expert_step(s);
  if (!step) throw std::logic_error("no expert step applies in " + s.current_problem()->id());
  if (chance(policy_.error_rate)) {
    // Same statement, wrong rule.
    PlannedStep wrong = *step;
    const auto& rules = logic::kAllRules;
    do {
      wrong.rule = rules[below(rules.size())];
    } while (wrong.rule == step->rule);
    submit(s, wrong, now);
    return true;
  }
  submit(s, *step, now);
  return true;
}

}  // namespace ptutor::service
