#include "ptutor/session/session.hpp"

#include <algorithm>

#include "ptutor/error.hpp"
#include "ptutor/hints/node_stats.hpp"

namespace ptutor::session {

using nlohmann::ordered_json;
using policy::HintKind;

namespace {

std::string pending_text(const policy::PolicyState& ps) {
  if (!ps.pending) return {};
  if (ps.pending->kind == HintKind::Assertion) return std::string(policy::kAssertionPrompt);
  return policy::derive_prompt(ps.pending->content.statement);
}

ordered_json id_array(std::span<const int> ids) {
  ordered_json a = ordered_json::array();
  for (int id : ids) a.push_back(id);
  return a;
}

}  // namespace

Session::Session(std::string id, std::string student, Condition condition,
                 std::shared_ptr<const TutorContent> content, std::uint64_t seed)
    : id_(std::move(id)),
      student_(std::move(student)),
      content_(std::move(content)),
      seed_(seed),
      policy_(condition, seed) {}

Session Session::create(std::string session_id, std::string student, Condition condition,
                        std::shared_ptr<const TutorContent> content, std::uint64_t seed,
                        Timestamp now) {
  if (!content) throw BankIncomplete("no problem bank loaded");
  content->bank.validate();
  Session s(std::move(session_id), std::move(student), condition, std::move(content), seed);
  s.policy_.last_activity = now;
  ordered_json payload;
  payload["student"] = s.student_;
  payload["condition"] = std::string(policy::condition_name(condition));
  payload["seed"] = seed;
  s.log(EventKind::SessionStart, now, std::move(payload));
  s.load(s.content_->bank.section(Phase::Intro).front(), now);
  return s;
}

Timestamp Session::clamp(Timestamp now) const {
  if (!events_.empty() && now < events_.back().t) return events_.back().t;
  return now;
}

Event& Session::log(EventKind kind, Timestamp t, ordered_json payload) {
  Event e;
  e.t = t;
  e.session = id_;
  e.phase = phase_;
  e.level = phase_ == Phase::Training ? level_ : 0;
  e.problem = current_ != nullptr ? current_->id() : std::string();
  e.kind = kind;
  e.payload = std::move(payload);
  events_.push_back(std::move(e));
  return events_.back();
}

void Session::load(const Problem* p, Timestamp now) {
  current_ = p;
  attempted_.insert(p->id());
  graph_.emplace(p->statement);
  history_.assign(1, hints::canonical_state(*graph_));
  policy::clear_pending(policy_);
  policy::note_activity(policy_, now);
  message_.clear();

  ordered_json payload;
  auto& premises = payload["premises"] = ordered_json::array();
  for (const auto& f : p->statement.premises) premises.push_back(logic::render(f));
  payload["conclusion"] = logic::render(p->statement.conclusion);
  payload["rank"] = p->rank;
  log(EventKind::ProblemStart, now, std::move(payload));
}

void Session::enter_level(int level, Timestamp now) {
  level_ = level;
  skips_used_ = 0;
  attempted_.clear();
  solved_.clear();
  load(pick_training(nullptr, false), now);
}

const Problem* Session::pick_training(const Problem* from, bool after_skip) const {
  const auto pool = content_->bank.section(Phase::Training, level_);
  std::vector<const Problem*> fresh;
  std::vector<const Problem*> unsolved;
  for (const Problem* p : pool) {
    if (!attempted_.contains(p->id())) fresh.push_back(p);
    if (!solved_.contains(p->id()) && p != from) unsolved.push_back(p);
  }
  if (after_skip && from != nullptr) {
    // Next-easier fresh problem: the hardest one ranked strictly below.
    for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) {
      if ((*it)->rank < from->rank) return *it;
    }
    if (!fresh.empty()) return fresh.front();
    if (!unsolved.empty()) return unsolved.front();
    return from;
  }
  if (!fresh.empty()) return fresh.back();
  if (!unsolved.empty()) return unsolved.front();
  return from != nullptr ? from : pool.front();
}

void Session::finish_problem(Timestamp now) {
  ++completed_total_;
  const auto& bank = content_->bank;
  switch (phase_) {
    case Phase::Pretest:
      if (++cursor_ < static_cast<std::size_t>(kPretestProblems)) {
        load(bank.section(Phase::Pretest)[cursor_], now);
      } else {
        phase_ = Phase::Training;
        cursor_ = 0;
        enter_level(1, now);
      }
      break;
    case Phase::Training:
      solved_.insert(current_->id());
      if (static_cast<int>(solved_.size()) >= kSolvesPerLevel) {
        if (level_ < kTrainingLevels) {
          enter_level(level_ + 1, now);
        } else {
          phase_ = Phase::Posttest;
          level_ = 0;
          cursor_ = 0;
          load(bank.section(Phase::Posttest).front(), now);
        }
      } else {
        load(pick_training(current_, false), now);
      }
      break;
    case Phase::Posttest:
      if (++cursor_ < static_cast<std::size_t>(kPosttestProblems)) {
        load(bank.section(Phase::Posttest)[cursor_], now);
      } else {
        phase_ = Phase::Done;
        current_ = nullptr;
        graph_.reset();
        history_.clear();
        policy::clear_pending(policy_);
        message_ = "All problems complete";
      }
      break;
    default:
      break;
  }
}

void Session::require_active(std::string_view what) const {
  if (current_ == nullptr || !graph_ || phase_ == Phase::Intro || phase_ == Phase::Done) {
    throw WrongPhase(std::string(what) + " is not available in phase " + std::string(phase_name(phase_)));
  }
}

bool Session::can_skip() const noexcept {
  return phase_ == Phase::Training && current_ != nullptr && skips_used_ < kMaxSkipsPerLevel;
}

bool Session::can_restart() const noexcept {
  return current_ != nullptr && graph_ && phase_ != Phase::Intro && phase_ != Phase::Done;
}

void Session::advance_example(Timestamp now) {
  now = clamp(now);
  if (phase_ != Phase::Intro) throw WrongPhase("worked examples are only shown in the intro");
  policy::note_activity(policy_, now);
  log(EventKind::WorkedExample, now);
  const auto& bank = content_->bank;
  if (++cursor_ < static_cast<std::size_t>(kIntroExamples)) {
    load(bank.section(Phase::Intro)[cursor_], now);
  } else {
    phase_ = Phase::Pretest;
    cursor_ = 0;
    load(bank.section(Phase::Pretest).front(), now);
  }
}

std::optional<hints::HintContent> Session::current_hint() const {
  if (current_ == nullptr || history_.empty()) return std::nullopt;
  const hints::ProblemModel* model = content_->library.find(current_->id());
  if (model == nullptr) return std::nullopt;
  return hints::hint_lookup(model->network, history_, history_.size() - 1);
}

StepOutcome Session::submit_step(std::span<const int> sources, std::string_view rule_text,
                                 std::string_view derived_text, Timestamp now) {
  now = clamp(now);
  require_active("submitting a step");
  const auto rule = logic::parse_rule(rule_text);
  if (!rule) throw InvalidRequest("unknown rule '" + std::string(rule_text) + "'");
  const logic::Formula derived = logic::parse_formula(derived_text);

  std::vector<logic::Formula> formulas;
  std::string blocked;
  for (int id : sources) {
    const logic::ProofNode* n = graph_->find(id);
    if (n == nullptr) throw InvalidRequest("no node " + std::to_string(id) + " in the workspace");
    if (n->kind == logic::NodeKind::AssertionPending) {
      blocked = "Justify the subgoal before using it as a source.";
    } else if (!n->justified()) {
      blocked = "The conclusion has not been derived yet, so it cannot be a source.";
    }
    formulas.push_back(n->statement);
  }

  StepOutcome out;
  out.verdict = blocked.empty() ? logic::verify_step(*rule, formulas, derived)
                                : logic::Verdict{logic::Outcome::InvalidRuleApplication, blocked};
  policy::note_activity(policy_, now);

  ordered_json payload;
  payload["rule"] = std::string(logic::rule_name(*rule));
  payload["sources"] = id_array(sources);
  payload["statement"] = logic::render(derived);

  if (!out.verdict.valid()) {
    payload["outcome"] = out.verdict.outcome == logic::Outcome::MalformedDerivation ? "malformed" : "invalid";
    payload["feedback"] = out.verdict.feedback;
    log(EventKind::StepError, now, std::move(payload));
    out.message = message_ = out.verdict.feedback;
    return out;
  }

  logic::NodeColor color = logic::NodeColor::None;
  if (phase_ == Phase::Training) {
    if (const auto* model = content_->library.find(current_->id())) color = hints::node_color(model->stats, derived);
  }
  const logic::AddResult added =
      graph_->add_derived(derived, logic::Justification{*rule, {sources.begin(), sources.end()}}, color);
  history_.push_back(hints::canonical_state(*graph_));
  out.node = added.node;
  out.completed = added.completed;

  payload["node"] = added.node;
  payload["color"] = std::string(logic::node_color_name(color));
  log(EventKind::StepValid, now, std::move(payload));

  if (auto justified = policy::resolve_justification(policy_, derived, now)) {
    ordered_json j;
    j["hint_kind"] = std::string(policy::hint_kind_name(justified->kind));
    j["statement"] = logic::render(justified->content.statement);
    j["node"] = added.node;
    j["issued_at"] = justified->issued_at.count();
    log(EventKind::HintJustified, now, std::move(j));
    out.justified = std::move(justified);
  }

  if (added.completed) {
    ordered_json j;
    j["length"] = graph_->derived_count();
    log(EventKind::ProblemComplete, now, std::move(j));
    out.message = message_ = "Problem complete";
    finish_problem(now);
    return out;
  }

  message_ = pending_text(policy_);
  if (phase_ == Phase::Training && policy_.condition == Condition::Assertions) {
    if (auto hint = current_hint()) {
      if (policy::schedule_assertion(policy_, *hint, now) == policy::AssertionDecision::Issue) {
        const int node = graph_->add_pending_assertion(hint->statement);
        policy_.pending->node = node;
        ordered_json j;
        j["hint_kind"] = std::string(policy::hint_kind_name(HintKind::Assertion));
        j["statement"] = logic::render(hint->statement);
        j["node"] = node;
        j["text"] = std::string(policy::kAssertionPrompt);
        log(EventKind::HintGiven, now, std::move(j));
        out.assertion = policy_.pending;
        message_ = std::string(policy::kAssertionPrompt);
      }
    }
  }
  out.message = message_;
  return out;
}

std::string Session::request_hint(Timestamp now) {
  now = clamp(now);
  if (!hints_enabled()) throw WrongPhase("hints are only available during training");
  const auto hint = current_hint();
  if (!hint) {
    policy::note_activity(policy_, now);
    return message_ = "No hint is available for this problem.";
  }
  std::string text = policy::request_hint(policy_, *hint, now);
  ordered_json j;
  j["hint_kind"] = std::string(policy::hint_kind_name(HintKind::OnDemand));
  j["statement"] = logic::render(hint->statement);
  j["text"] = text;
  log(EventKind::HintGiven, now, std::move(j));
  return message_ = std::move(text);
}

void Session::skip_problem(Timestamp now) {
  now = clamp(now);
  if (phase_ != Phase::Training || current_ == nullptr) throw WrongPhase("problems can only be skipped during training");
  if (skips_used_ >= kMaxSkipsPerLevel) throw SkipLimitReached("no skips left in this level");
  ++skips_used_;
  ordered_json j;
  j["skips_used"] = skips_used_;
  log(EventKind::Skip, now, std::move(j));
  load(pick_training(current_, true), now);
}

void Session::restart_problem(Timestamp now) {
  now = clamp(now);
  require_active("restart");
  graph_->clear_work();
  history_.assign(1, hints::canonical_state(*graph_));
  policy::clear_pending(policy_);
  policy::note_activity(policy_, now);
  message_.clear();
  log(EventKind::Restart, now);
}

void Session::delete_assertion(int node, Timestamp now) {
  now = clamp(now);
  require_active("deleting an assertion");
  if (!policy_.pending || policy_.pending->kind != HintKind::Assertion || policy_.pending->node != node) {
    throw InvalidRequest("node " + std::to_string(node) + " is not a pending assertion");
  }
  const std::string statement = logic::render(policy_.pending->content.statement);
  graph_->remove_pending_assertion(node);
  policy::clear_pending(policy_);
  policy::note_activity(policy_, now);
  message_.clear();
  ordered_json j;
  j["node"] = node;
  j["statement"] = statement;
  log(EventKind::AssertionDeleted, now, std::move(j));
}

std::optional<std::string> Session::tick(Timestamp now) {
  now = clamp(now);
  if (!hints_enabled() || policy_.condition != Condition::Messages) return std::nullopt;
  if (policy_.pending || now - policy_.last_activity < policy::kInactivityThreshold) return std::nullopt;
  const auto hint = current_hint();
  if (!hint) return std::nullopt;
  auto text = policy::check_inactivity(policy_, now, *hint);
  if (!text) return std::nullopt;
  ordered_json j;
  j["hint_kind"] = std::string(policy::hint_kind_name(HintKind::Message));
  j["statement"] = logic::render(hint->statement);
  j["text"] = *text;
  log(EventKind::HintGiven, now, std::move(j));
  message_ = *text;
  return text;
}

}  // namespace ptutor::session
