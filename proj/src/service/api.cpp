#include "ptutor/service/api.hpp"

#include <charconv>
#include <chrono>
#include <fstream>

#include "ptutor/error.hpp"

namespace ptutor::service {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Response reply(int status, const ordered_json& body) { return {status, body.dump()}; }

Response error(int status, std::string_view message, const session::Session* s = nullptr) {
  ordered_json j;
  j["error"] = message;
  if (s != nullptr) j["session"] = snapshot(*s);
  return reply(status, j);
}

std::vector<std::string_view> split_path(std::string_view path) {
  if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    while (!path.empty() && path.front() == '/') path.remove_prefix(1);
    const auto end = path.find('/');
    if (!path.empty()) parts.push_back(path.substr(0, end));
    path = end == std::string_view::npos ? std::string_view() : path.substr(end);
  }
  return parts;
}

ordered_json formula_list(std::span<const logic::Formula> fs) {
  ordered_json a = ordered_json::array();
  for (const auto& f : fs) a.push_back(logic::render(f));
  return a;
}

}  // namespace

ordered_json snapshot(const session::Session& s) {
  ordered_json j;
  j["id"] = s.id();
  j["student"] = s.student();
  j["condition"] = policy::condition_name(s.condition());
  j["phase"] = session::phase_name(s.phase());
  j["level"] = s.level();
  if (const auto* p = s.current_problem()) {
    ordered_json pj;
    pj["id"] = p->id();
    pj["premises"] = formula_list(p->statement.premises);
    pj["conclusion"] = logic::render(p->statement.conclusion);
    auto& rules = pj["rules"] = ordered_json::array();
    for (auto r : p->intended_rules) rules.push_back(logic::rule_name(r));
    j["problem"] = std::move(pj);
  } else {
    j["problem"] = nullptr;
  }
  auto& nodes = j["nodes"] = ordered_json::array();
  if (const auto* g = s.graph()) {
    for (const auto& n : g->nodes()) {
      ordered_json nj;
      nj["id"] = n.id;
      nj["statement"] = logic::render(n.statement);
      nj["kind"] = logic::node_kind_name(n.kind);
      nj["color"] = logic::node_color_name(n.color);
      if (n.justification) {
        nj["justification"] = {{"rule", logic::rule_name(n.justification->rule)},
                               {"sources", n.justification->sources}};
      } else {
        nj["justification"] = nullptr;
      }
      nodes.push_back(std::move(nj));
    }
  }
  if (const auto& p = s.policy().pending) {
    ordered_json h;
    h["kind"] = policy::hint_kind_name(p->kind);
    h["statement"] = logic::render(p->content.statement);
    h["node"] = p->kind == policy::HintKind::Assertion ? ordered_json(p->node) : ordered_json(nullptr);
    h["issued_at"] = p->issued_at.count();
    j["pending_hint"] = std::move(h);
  } else {
    j["pending_hint"] = nullptr;
  }
  j["message"] = s.message();
  j["can_skip"] = s.can_skip();
  j["can_restart"] = s.can_restart();
  j["hints_enabled"] = s.hints_enabled();
  j["skips_used"] = s.skips_used();
  j["solved_in_level"] = s.solved_in_level();
  j["problems_completed"] = s.problems_completed();
  return j;
}

Api::Api(std::shared_ptr<const session::TutorContent> content, std::optional<std::filesystem::path> log_dir,
         Clock clock)
    : content_(std::move(content)), log_dir_(std::move(log_dir)), clock_(std::move(clock)) {
  if (!clock_) {
    clock_ = [] {
      return std::chrono::duration_cast<Timestamp>(std::chrono::system_clock::now().time_since_epoch());
    };
  }
  if (log_dir_) std::filesystem::create_directories(*log_dir_);
}

std::shared_ptr<Api::Entry> Api::lookup(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::vector<std::string> Api::session_ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, e] : sessions_) out.push_back(id);
  return out;
}

void Api::persist(Entry& e) {
  const auto events = e.session.events();
  if (!log_dir_ || e.persisted == events.size()) {
    e.persisted = events.size();
    return;
  }
  std::ofstream out(*log_dir_ / (e.session.id() + ".jsonl"), std::ios::app);
  for (std::size_t i = e.persisted; i < events.size(); ++i) out << session::to_line(events[i]) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot append to the event log of " + e.session.id());
  e.persisted = events.size();
}

std::size_t Api::recover() {
  if (!log_dir_) return 0;
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(*log_dir_)) {
    if (entry.path().extension() != ".jsonl") continue;
    std::ifstream in(entry.path());
    const auto events = session::read_events(in);
    if (events.empty()) continue;
    auto e = std::make_shared<Entry>(session::replay_session(events, content_));
    e->persisted = e->session.events().size();
    const std::string id = e->session.id();
    std::lock_guard lock(mu_);
    // Keep fresh ids clear of recovered ones ("s<number>").
    std::uint64_t n = 0;
    if (id.size() > 1 && id[0] == 's') {
      std::from_chars(id.data() + 1, id.data() + id.size(), n);
    }
    next_id_ = std::max(next_id_, n + 1);
    sessions_[id] = std::move(e);
    ++count;
  }
  return count;
}

void Api::sweep() {
  std::vector<std::shared_ptr<Entry>> all;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, e] : sessions_) all.push_back(e);
  }
  const Timestamp now = clock_();
  for (const auto& e : all) {
    std::lock_guard lock(e->mu);
    e->session.tick(now);
    persist(*e);
  }
}

Response Api::create(const json& body) {
  const std::string student = body.value("student", std::string("anonymous"));
  const auto condition = policy::parse_condition(body.value("condition", std::string()));
  if (!condition) return error(422, "condition must be \"assertions\" or \"messages\"");
  const std::uint64_t seed = body.value("seed", std::uint64_t{0});
  const Timestamp now = body.contains("now") ? Timestamp(body.at("now").get<std::int64_t>()) : clock_();
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = "s" + std::to_string(next_id_++);
  }
  auto e = std::make_shared<Entry>(session::Session::create(id, student, *condition, content_, seed, now));
  {
    std::lock_guard lock(e->mu);
    persist(*e);
  }
  {
    std::lock_guard lock(mu_);
    sessions_[id] = e;
  }
  std::lock_guard lock(e->mu);
  return reply(201, snapshot(e->session));
}

Response Api::command(Entry& e, std::string_view action, std::string_view arg, const json& body) {
  session::Session& s = e.session;
  const Timestamp now = body.contains("now") ? Timestamp(body.at("now").get<std::int64_t>()) : clock_();
  ordered_json out;
  if (action == "advance") {
    s.advance_example(now);
  } else if (action == "steps") {
    if (!body.contains("rule") || !body.contains("derived")) return error(422, "a step needs rule and derived", &s);
    const auto sources = body.value("sources", std::vector<int>{});
    const auto result =
        s.submit_step(sources, body.at("rule").get<std::string>(), body.at("derived").get<std::string>(), now);
    persist(e);
    if (!result.verdict.valid()) {
      ordered_json j;
      j["error"] = result.verdict.feedback;
      j["feedback"] = result.verdict.feedback;
      j["session"] = snapshot(s);
      return reply(422, j);
    }
    out["node"] = result.node ? ordered_json(*result.node) : ordered_json(nullptr);
    out["completed"] = result.completed;
  } else if (action == "hint") {
    out["text"] = s.request_hint(now);
  } else if (action == "skip") {
    s.skip_problem(now);
  } else if (action == "restart") {
    s.restart_problem(now);
  } else if (action == "assertions") {
    int node = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), node);
    if (ec != std::errc() || ptr != arg.data() + arg.size()) return error(404, "no such assertion", &s);
    s.delete_assertion(node, now);
  } else if (action == "tick") {
    const auto text = s.tick(now);
    out["text"] = text ? ordered_json(*text) : ordered_json(nullptr);
  } else {
    return error(404, "unknown endpoint");
  }
  persist(e);
  out["session"] = snapshot(s);
  return reply(200, out);
}

Response Api::handle(std::string_view method, std::string_view path, std::string_view body_text) {
  const auto parts = split_path(path);
  if (parts.empty() || parts[0] != "sessions") return error(404, "unknown endpoint");

  json body = json::object();
  if (!body_text.empty()) {
    body = json::parse(body_text, nullptr, false);
    if (body.is_discarded() || !body.is_object()) return error(400, "body must be a JSON object");
  }

  try {
    if (parts.size() == 1) {
      if (method != "POST") return error(405, "use POST to create a session");
      return create(body);
    }
    const auto entry = lookup(std::string(parts[1]));
    if (!entry) return error(404, "unknown session");
    std::lock_guard lock(entry->mu);
    if (parts.size() == 2) {
      if (method != "GET") return error(405, "use GET to read a session");
      return reply(200, snapshot(entry->session));
    }
    if (method != "POST") return error(405, "commands use POST");
    const std::string_view action = parts[2];
    std::string_view arg;
    if (action == "assertions") {
      if (parts.size() != 5 || parts[4] != "delete") return error(404, "unknown endpoint");
      arg = parts[3];
    } else if (parts.size() != 3) {
      return error(404, "unknown endpoint");
    }
    try {
      return command(*entry, action, arg, body);
    } catch (const MalformedFormula& e) {
      return error(422, e.what(), &entry->session);
    } catch (const InvalidRequest& e) {
      return error(action == "assertions" ? 404 : 422, e.what(), &entry->session);
    } catch (const WrongPhase& e) {
      return error(409, e.what(), &entry->session);
    } catch (const SkipLimitReached& e) {
      return error(409, e.what(), &entry->session);
    }
  } catch (const BankIncomplete& e) {
    return error(500, e.what());
  } catch (const json::exception& e) {
    return error(422, e.what());
  }
}

}  // namespace ptutor::service
