#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ptutor/session/problem_bank.hpp"

namespace ptutor::service {

struct ServerOptions {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::optional<std::filesystem::path> log_dir;
};

/// Serves the API over HTTP until the listener stops. Sessions found in the
/// log directory are recovered first; a background sweep ticks every session
/// every 5 s. Returns a process exit code.
int run_server(std::shared_ptr<const session::TutorContent> content, const ServerOptions& opts);

}  // namespace ptutor::service
