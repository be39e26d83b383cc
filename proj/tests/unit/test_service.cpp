#include <atomic>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "qmut/certificate_check.hpp"
#include "qmut/service.hpp"

using namespace qmut;

namespace {

const std::string kQce = R"({"n": 4, "matrix": [[0,2,2,4],[-2,0,-6,2],[-2,6,0,-2],[-4,-2,2,0]]})";
const std::string kA2 = R"({"n": 2, "arrows": [[1, 2, 1]]})";
const std::string kA4 = R"({"n": 4, "arrows": [[1, 2, 1], [2, 3, 1], [4, 3, 1]]})";

Json ok(const HttpReply& r, int status = 200) {
  REQUIRE(r.status == status);
  return Json::parse(r.body);
}

}  // namespace

TEST_CASE("session lifecycle") {
  SessionStore store(true);
  Service svc(store);
  const Json created = ok(svc.handle("POST", "/sessions", kA2), 201);
  const std::string id = created["id"];
  CHECK(created["colors"] == Json::array({"green", "green"}));
  CHECK(created["history"].empty());
  CHECK(created["quiver"]["frozen_rows"] == Json::parse("[[1,0],[0,1]]"));

  const Json m1 = ok(svc.handle("POST", "/sessions/" + id + "/mutate", R"({"vertex": 1})"));
  CHECK(m1["colors"] == Json::array({"red", "green"}));
  const Json m2 = ok(svc.handle("POST", "/sessions/" + id + "/mutate", R"({"vertex": 2})"));
  CHECK(m2["all_red"] == true);
  CHECK(m2["history"] == Json::array({1, 2}));

  const Json u = ok(svc.handle("POST", "/sessions/" + id + "/undo", ""));
  CHECK(u["quiver"] == m1["quiver"]);
  CHECK(ok(svc.handle("GET", "/sessions/" + id, ""))["history"] == Json::array({1}));

  const Json r = ok(svc.handle("POST", "/sessions/" + id + "/reset", ""));
  CHECK(r["quiver"] == created["quiver"]);
  CHECK(r["history"].empty());
}

TEST_CASE("error statuses") {
  SessionStore store;
  Service svc(store);
  const std::string id = ok(svc.handle("POST", "/sessions", kA2), 201)["id"];
  CHECK(svc.handle("GET", "/sessions/s999", "").status == 404);
  CHECK(svc.handle("GET", "/nowhere", "").status == 404);
  CHECK(svc.handle("POST", "/sessions/" + id + "/fly", "").status == 404);
  CHECK(svc.handle("GET", "/sessions", "").status == 405);
  CHECK(svc.handle("GET", "/sessions/" + id + "/mutate", "").status == 405);
  CHECK(svc.handle("POST", "/sessions/" + id + "/undo", "").status == 409);
  CHECK(svc.handle("POST", "/sessions/" + id + "/mutate", R"({"vertex": 3})").status == 409);
  CHECK(svc.handle("POST", "/sessions/" + id + "/mutate", R"({"vertex": 0})").status == 409);
  CHECK(svc.handle("POST", "/sessions/" + id + "/mutate", R"({"vertex": "1"})").status == 400);
  CHECK(svc.handle("POST", "/sessions/" + id + "/mutate", "{").status == 400);
  CHECK(svc.handle("POST", "/sessions", R"({"n": 2, "matrix": [[0,1],[1,0]]})").status == 400);
  CHECK(svc.handle("POST", "/sessions", R"({"n": 1, "matrix": [[99999999999999999999]]})").status == 422);
  CHECK(svc.handle("POST", "/sessions/" + id + "/search", R"({"kind": "other"})").status == 400);
  const Json err = Json::parse(svc.handle("GET", "/sessions/s999", "").body);
  CHECK(err.contains("error"));
}

TEST_CASE("frozen vertices cannot be mutated") {
  SessionStore store;
  Service svc(store);
  const std::string doc = R"({"n": 2, "frozen": 1, "arrows": [[1, 2, 1], [2, 3, 1]]})";
  const Json s = ok(svc.handle("POST", "/sessions", doc), 201);
  CHECK(s["quiver"]["frozen_rows"] == Json::parse("[[0,1]]"));
  const std::string id = s["id"];
  const HttpReply r = svc.handle("POST", "/sessions/" + id + "/mutate", R"({"vertex": 3})");
  CHECK(r.status == 409);
  CHECK(Json::parse(r.body)["error"].get<std::string>().find("frozen") != std::string::npos);
}

TEST_CASE("search and certificates") {
  SessionStore store;
  Service svc(store, 10);
  const std::string id = ok(svc.handle("POST", "/sessions", kQce), 201)["id"];
  const Json g2r = ok(svc.handle("POST", "/sessions/" + id + "/search", R"({"kind": "g2r"})"));
  CHECK(g2r["outcome"] == "found");
  CHECK(check_certificate(g2r["certificate"]).ok);
  const Json mgs = ok(svc.handle("POST", "/sessions/" + id + "/search", R"({"kind": "mgs", "max_depth": 6})"));
  CHECK(mgs["outcome"] == "obstructed");

  const Json certs = ok(svc.handle("GET", "/sessions/" + id + "/certificates", ""));
  REQUIRE(certs["certificates"].is_array());
  CHECK(certs["certificates"].size() == 5);
  for (const auto& c : certs["certificates"]) CHECK(check_certificate(c).ok);
}

TEST_CASE("concurrent sessions keep consistent histories") {
  SessionStore store(true);
  Service svc(store);
  std::vector<std::string> ids;
  // Finite type keeps entries bounded under long mutation runs.
  for (int i = 0; i < 4; ++i) ids.push_back(ok(svc.handle("POST", "/sessions", kA4), 201)["id"]);
  std::vector<std::thread> workers;
  std::atomic<int> failures{0};
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&, t] {
      const std::string& id = ids[static_cast<std::size_t>(t % 4)];
      for (int s = 0; s < 25; ++s) {
        const std::string body = "{\"vertex\": " + std::to_string(1 + (t + s) % 4) + "}";
        if (svc.handle("POST", "/sessions/" + id + "/mutate", body).status != 200) ++failures;
      }
    });
  }
  for (auto& w : workers) w.join();
  CHECK(failures == 0);
  CHECK(store.size() == 4);
  for (const auto& id : ids) {
    // Replay checking is on, so a successful GET means history reproduces the state.
    const Json s = ok(svc.handle("GET", "/sessions/" + id, ""));
    CHECK(s["history"].size() == 50);
  }
}

TEST_CASE("HTTP round trip") {
  SessionStore store;
  Service svc(store);
  httplib::Server server;
  svc.install(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/sessions", kA2, "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Content-Type") == "application/json");
  const std::string id = Json::parse(created->body)["id"];

  auto mutated = client.Post("/sessions/" + id + "/mutate", R"({"vertex": 2})", "application/json");
  REQUIRE(mutated);
  CHECK(mutated->status == 200);
  CHECK(Json::parse(mutated->body)["colors"] == Json::array({"green", "red"}));

  auto missing = client.Get("/sessions/nope");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto certs = client.Get("/sessions/" + id + "/certificates");
  REQUIRE(certs);
  CHECK(certs->status == 200);

  server.stop();
  th.join();
}
