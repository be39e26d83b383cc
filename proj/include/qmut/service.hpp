#pragma once

#include <string>

#include "qmut/session.hpp"

namespace httplib {
class Server;
}

namespace qmut {

struct HttpReply {
  int status = 200;
  std::string body;
};

/// HTTP/JSON front end over a SessionStore.
///
///   POST /sessions                      body: quiver document
///   GET  /sessions/{id}
///   POST /sessions/{id}/mutate          body: {"vertex": k}
///   POST /sessions/{id}/undo
///   POST /sessions/{id}/reset
///   POST /sessions/{id}/search          body: {"kind": "mgs"|"g2r", "max_depth": d}
///   GET  /sessions/{id}/certificates
///
/// Errors are {"error": message} with 400 (bad request), 404 (unknown
/// session), 409 (invalid move) or 422 (resource limit).
class Service {
 public:
  explicit Service(SessionStore& store, int default_depth = 10) : store_(store), default_depth_(default_depth) {}

  /// Routes one request; used by the HTTP server and directly by tests.
  HttpReply handle(const std::string& method, const std::string& path, const std::string& body);

  void install(httplib::Server& server);

  /// Blocks serving on host:port until the server is stopped.
  bool listen(const std::string& host, int port);

 private:
  SessionStore& store_;
  int default_depth_;
};

}  // namespace qmut
