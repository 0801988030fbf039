#pragma once

#include <memory>
#include <string>

#include "plainloop/gateway/api.hpp"

namespace httplib {
class Server;
}

namespace plainloop::gateway {

// HTTP/1.1 front end for an ApiRouter.
class HttpServer {
 public:
  explicit HttpServer(const ApiRouter& router);
  ~HttpServer();

  // Port 0 picks a free port. Returns the bound port; throws InvalidConfig.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void stop();
  bool running() const;

 private:
  const ApiRouter& router_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace plainloop::gateway
