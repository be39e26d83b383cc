#include "qmut/service.hpp"

#include <regex>

#include "httplib.h"

namespace qmut {

namespace {

HttpReply error_reply(int status, const std::string& message) {
  return {status, Json{{"error", message}}.dump()};
}

Json parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed request body: ") + e.what());
  }
}

}  // namespace

HttpReply Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  static const std::regex session_re(R"(^/sessions/([A-Za-z0-9_-]+)(/([a-z]+))?$)");
  try {
    if (path == "/sessions") {
      if (method != "POST") return error_reply(405, "method not allowed");
      return {201, store_.create(parse_body(body)).dump()};
    }
    std::smatch m;
    if (!std::regex_match(path, m, session_re)) return error_reply(404, "no such route");
    const std::string id = m[1];
    const std::string action = m[3];
    if (action.empty()) {
      if (method != "GET") return error_reply(405, "method not allowed");
      return {200, store_.state(id).dump()};
    }
    if (action == "certificates") {
      if (method != "GET") return error_reply(405, "method not allowed");
      return {200, store_.certificates(id).dump()};
    }
    if (method != "POST") return error_reply(405, "method not allowed");
    const Json req = parse_body(body);
    if (action == "mutate") {
      if (!req.contains("vertex") || !req["vertex"].is_number_integer()) {
        throw UsageError("mutate needs an integer 'vertex'");
      }
      return {200, store_.mutate(id, req["vertex"].get<int>()).dump()};
    }
    if (action == "undo") return {200, store_.undo(id).dump()};
    if (action == "reset") return {200, store_.reset(id).dump()};
    if (action == "search") {
      const std::string kind = req.value("kind", std::string("g2r"));
      const int depth = req.value("max_depth", default_depth_);
      return {200, store_.search(id, kind, depth).dump()};
    }
    return error_reply(404, "no such route");
  } catch (const SessionNotFound& e) {
    return error_reply(404, e.what());
  } catch (const InvalidMove& e) {
    return error_reply(409, e.what());
  } catch (const ResourceError& e) {
    return error_reply(422, e.what());
  } catch (const Error& e) {
    return error_reply(400, e.what());
  } catch (const Json::exception& e) {
    return error_reply(400, e.what());
  }
}

void Service::install(httplib::Server& server) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpReply r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get(R"(/sessions(/.*)?)", route);
  server.Post(R"(/sessions(/.*)?)", route);
}

bool Service::listen(const std::string& host, int port) {
  httplib::Server server;
  install(server);
  return server.listen(host, port);
}

}  // namespace qmut
