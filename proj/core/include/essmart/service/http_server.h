#ifndef ESSMART_SERVICE_HTTP_SERVER_H_
#define ESSMART_SERVICE_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "essmart/service/service.h"

namespace essmart::service {

// Serves TriageService::handle over HTTP with JSON bodies.
class HttpServer {
 public:
  explicit HttpServer(TriageService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds without serving; port 0 picks a free port. Returns the bound port
  // or throws Io.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace essmart::service

#endif  // ESSMART_SERVICE_HTTP_SERVER_H_
