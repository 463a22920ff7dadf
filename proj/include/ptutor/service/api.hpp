#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ptutor/session/session.hpp"

namespace ptutor::service {

using policy::Timestamp;

struct Response {
  int status = 200;
  std::string body;  ///< JSON
};

/// Pure projection of a session for clients.
nlohmann::ordered_json snapshot(const session::Session& s);

/// Request router over a set of live sessions, independent of any transport.
///
/// Routes:
///   POST /sessions                          {student, condition, seed}
///   GET  /sessions/{id}
///   POST /sessions/{id}/advance             finish the current worked example
///   POST /sessions/{id}/steps               {sources, rule, derived}
///   POST /sessions/{id}/hint
///   POST /sessions/{id}/skip
///   POST /sessions/{id}/restart
///   POST /sessions/{id}/assertions/{node}/delete
///   POST /sessions/{id}/tick                {now}
/// Every mutating body may carry `now` (ms); otherwise the clock is read.
///
/// Commands on one session are serialized; different sessions run in parallel.
class Api {
 public:
  using Clock = std::function<Timestamp()>;

  /// With a log directory, each session's events are appended to
  /// `<dir>/<id>.jsonl` as they happen.
  explicit Api(std::shared_ptr<const session::TutorContent> content,
               std::optional<std::filesystem::path> log_dir = std::nullopt, Clock clock = {});

  Response handle(std::string_view method, std::string_view path, std::string_view body);

  /// Ticks every session at the current clock time; drives inactivity Messages.
  void sweep();

  /// Rebuilds sessions from the log directory by replay. Returns how many.
  std::size_t recover();

  std::vector<std::string> session_ids() const;

 private:
  struct Entry {
    explicit Entry(session::Session s) : session(std::move(s)) {}
    std::mutex mu;
    session::Session session;
    std::size_t persisted = 0;
  };

  std::shared_ptr<Entry> lookup(const std::string& id) const;
  void persist(Entry& e);
  Response create(const nlohmann::json& body);
  Response command(Entry& e, std::string_view action, std::string_view arg, const nlohmann::json& body);

  std::shared_ptr<const session::TutorContent> content_;
  std::optional<std::filesystem::path> log_dir_;
  Clock clock_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace ptutor::service
