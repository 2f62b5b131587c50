#include "essmart/service/http_server.h"

#include <httplib.h>

#include "essmart/common/error.h"

namespace essmart::service {

struct HttpServer::Impl {
  TriageService& service;
  httplib::Server server;

  explicit Impl(TriageService& s) : service(s) {
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
      std::map<std::string, std::string> query;
      for (const auto& [key, value] : req.params) query.emplace(key, value);
      const auto out = service.handle(req.method, req.path, query, req.body,
                                      req.get_header_value("X-User"));
      res.status = out.status;
      res.set_content(out.body.dump(), "application/json");
    };
    const std::string any = R"(/.*)";
    server.Get(any, route);
    server.Post(any, route);
    server.Put(any, route);
    server.Delete(any, route);
  }
};

HttpServer::HttpServer(TriageService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace essmart::service
