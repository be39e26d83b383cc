#include "qmut/session.hpp"

#include "qmut/class_explorer.hpp"
#include "qmut/obstructions.hpp"

namespace qmut {

Json state_json(const IceQuiver& q, const MutationSequence& history) {
  return Json{{"quiver", to_json(q)},
              {"colors", to_json(vertex_statuses(q))},
              {"all_red", all_red(q)},
              {"history", to_json(history)}};
}

std::shared_ptr<SessionStore::Slot> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionNotFound("unknown session '" + id + "'");
  return it->second;
}

Json SessionStore::describe(const Session& s) const {
  if (check_replay_) {
    IceQuiver q = s.seed;
    for (int k : s.history.steps()) q = qmut::mutate(q, k);
    if (q != s.current) throw Error("session " + s.id + ": history does not reproduce the current state");
  }
  Json out = state_json(s.current, s.history);
  out["id"] = s.id;
  return out;
}

Json SessionStore::create(const Json& quiver_doc) {
  const IceQuiver q = quiver_from_json(quiver_doc);
  auto slot = std::make_shared<Slot>();
  slot->session.seed = q.frozen_count() == 0 ? frame(q.principal()) : q;
  slot->session.current = slot->session.seed;
  vertex_statuses(slot->session.seed);
  {
    std::unique_lock lock(mutex_);
    slot->session.id = "s" + std::to_string(next_id_++);
    sessions_.emplace(slot->session.id, slot);
  }
  std::lock_guard guard(slot->mutex);
  return describe(slot->session);
}

Json SessionStore::state(const std::string& id) {
  auto slot = find(id);
  std::lock_guard guard(slot->mutex);
  return describe(slot->session);
}

Json SessionStore::mutate(const std::string& id, int vertex) {
  auto slot = find(id);
  std::lock_guard guard(slot->mutex);
  Session& s = slot->session;
  const int n = s.current.mutable_count();
  if (vertex > n && vertex <= s.current.row_count()) {
    throw InvalidMove("vertex " + std::to_string(vertex) + " is frozen");
  }
  if (vertex < 1 || vertex > n) {
    throw InvalidMove("vertex " + std::to_string(vertex) + " is not a mutable vertex (1.." + std::to_string(n) + ")");
  }
  s.current = qmut::mutate(s.current, vertex - 1);
  s.history.push_back(vertex - 1);
  return describe(s);
}

Json SessionStore::undo(const std::string& id) {
  auto slot = find(id);
  std::lock_guard guard(slot->mutex);
  Session& s = slot->session;
  if (s.history.empty()) throw InvalidMove("nothing to undo");
  s.current = qmut::mutate(s.current, s.history.steps().back());
  s.history.pop_back();
  return describe(s);
}

Json SessionStore::reset(const std::string& id) {
  auto slot = find(id);
  std::lock_guard guard(slot->mutex);
  Session& s = slot->session;
  s.current = s.seed;
  s.history = MutationSequence{};
  return describe(s);
}

Json SessionStore::search(const std::string& id, const std::string& kind, int max_depth) {
  auto slot = find(id);
  std::lock_guard guard(slot->mutex);
  const ExchangeMatrix b = slot->session.seed.principal();
  if (max_depth < 0) throw UsageError("max_depth must be nonnegative");
  if (kind == "mgs") return to_json(search_mgs(b, max_depth), b, kind);
  if (kind == "g2r") return to_json(search_g2r(b, max_depth), b, kind);
  throw UsageError("search kind must be 'mgs' or 'g2r'");
}

Json SessionStore::certificates(const std::string& id) {
  auto slot = find(id);
  std::lock_guard guard(slot->mutex);
  const ExchangeMatrix b = slot->session.seed.principal();
  Json out = Json::array();
  if (auto c = no_mgs_certificate(b)) out.push_back(to_json(*c));
  if (auto c = class_no_mgs_certificate(b)) out.push_back(to_json(*c));
  out.push_back(to_json(admissible_coloring(b), b));
  out.push_back(covering_pairs_json(IceQuiver(b), covering_pairs(b)));
  if (auto la = local_acyclicity_certificate(IceQuiver(b))) out.push_back(to_json(*la));
  return Json{{"certificates", out}};
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

}  // namespace qmut
