#include "touchscope/http_server.hpp"

#include <httplib.h>

namespace touchscope {

struct HttpServer::Impl {
  Api& api;
  httplib::Server server;

  explicit Impl(Api& a) : api(a) {}

  void dispatch(const httplib::Request& req, httplib::Response& res) {
    ApiRequest request;
    request.method = req.method;
    request.path = req.path;
    for (const auto& [k, v] : req.params) request.query[k] = v;
    request.body = req.body;
    const auto response = api.handle(request);
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  }
};

HttpServer::HttpServer(Api& api) : impl_(std::make_unique<Impl>(api)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    impl_->dispatch(req, res);
  };
  impl_->server.Get(R"(/.*)", handler);
  impl_->server.Post(R"(/.*)", handler);
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port, std::function<void(int)> on_bound) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) return false;
  } else if (!impl_->server.bind_to_port(host, port)) {
    return false;
  }
  if (on_bound) on_bound(bound);
  return impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace touchscope
