#pragma once

#include <functional>
#include <memory>
#include <string>

#include "touchscope/api.hpp"

namespace touchscope {

/// HTTP/1.1 binding of Api. Routes every request through Api::handle.
class HttpServer {
 public:
  explicit HttpServer(Api& api);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and serves until stop(); returns false if binding failed.
  /// Port 0 picks a free port, reported through `on_bound` before serving.
  bool listen(const std::string& host, int port, std::function<void(int)> on_bound = {});
  void stop();
  /// Blocks until a concurrent listen() is accepting connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace touchscope
