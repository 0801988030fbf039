#include "plainloop/gateway/server.hpp"

#include <httplib.h>

#include "plainloop/common/error.hpp"

namespace plainloop::gateway {

HttpServer::HttpServer(const ApiRouter& router) : router_(router), server_(std::make_unique<httplib::Server>()) {
  // One byte over the limit so the router, not httplib, reports it as JSON.
  server_->set_payload_max_length(kMaxBodyBytes + 1);
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest request;
    request.method = req.method;
    request.path = req.path;
    for (const auto& [key, value] : req.params) request.query.emplace(key, value);
    request.authorization = req.get_header_value("Authorization");
    request.body = req.body;
    const auto response = router_.handle(request);
    res.status = response.status;
    res.set_content(response.text(), "application/json");
  };
  server_->Get(".*", handler);
  server_->Post(".*", handler);
  server_->Put(".*", handler);
  server_->Delete(".*", handler);
  server_->Patch(".*", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw Error(ErrorCode::InvalidConfig, "cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

bool HttpServer::running() const { return server_->is_running(); }

}  // namespace plainloop::gateway
