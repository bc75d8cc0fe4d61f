#pragma once

// JSON-over-HTTP front end for TutorService.

#include <memory>
#include <string>

#include "tutor/error.hpp"
#include "tutor/event.hpp"
#include "tutor/gateway/service.hpp"

namespace tutor::gateway {

/// HTTP status used for an error code.
int http_status(Errc code);
/// {"code": "...", "message": "..."}
Json error_body(Errc code, const std::string& message);

Json to_json(const Progress& p);
Json to_json(const Step& s);
Json to_json(const Questionnaire& q);

class HttpGateway {
 public:
  explicit HttpGateway(TutorService& service);
  ~HttpGateway();
  HttpGateway(const HttpGateway&) = delete;
  HttpGateway& operator=(const HttpGateway&) = delete;

  /// Blocks until stop(). Returns false if the address cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it (or -1); then call listen_after_bind.
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  bool is_running() const;
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tutor::gateway
