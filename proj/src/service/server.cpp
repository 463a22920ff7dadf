#include "ptutor/service/server.hpp"

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <iostream>
#include <thread>

#include "ptutor/service/api.hpp"

namespace ptutor::service {

int run_server(std::shared_ptr<const session::TutorContent> content, const ServerOptions& opts) {
  Api api(std::move(content), opts.log_dir);
  if (opts.log_dir) {
    const auto n = api.recover();
    std::cerr << "recovered " << n << " session(s) from " << opts.log_dir->string() << '\n';
  }

  httplib::Server svr;
  auto route = [&api](const httplib::Request& req, httplib::Response& res) {
    const Response r = api.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  svr.Get(".*", route);
  svr.Post(".*", route);
  svr.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  svr.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  std::mutex mu;
  std::condition_variable cv;
  bool stopping = false;
  std::thread sweeper([&] {
    std::unique_lock lock(mu);
    while (!cv.wait_for(lock, std::chrono::seconds(5), [&] { return stopping; })) {
      lock.unlock();
      api.sweep();
      lock.lock();
    }
  });

  std::cerr << "listening on " << opts.host << ':' << opts.port << '\n';
  const bool ok = svr.listen(opts.host, opts.port);
  {
    std::lock_guard lock(mu);
    stopping = true;
  }
  cv.notify_all();
  sweeper.join();
  if (!ok) {
    std::cerr << "cannot listen on " << opts.host << ':' << opts.port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace ptutor::service
