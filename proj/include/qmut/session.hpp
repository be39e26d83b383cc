#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "qmut/errors.hpp"
#include "qmut/serialize.hpp"

namespace qmut {

class SessionNotFound : public Error {
 public:
  using Error::Error;
};

/// Rejected state transition: frozen or out-of-range vertex, undo on empty history.
class InvalidMove : public Error {
 public:
  using Error::Error;
};

struct Session {
  std::string id;
  IceQuiver seed;     // state at creation, framed unless frozen rows were given
  IceQuiver current;
  MutationSequence history;
};

/// In-memory sessions. Calls on one session are serialized; distinct
/// sessions proceed in parallel.
class SessionStore {
 public:
#ifdef NDEBUG
  static constexpr bool kCheckReplayDefault = false;
#else
  static constexpr bool kCheckReplayDefault = true;
#endif

  explicit SessionStore(bool check_replay = kCheckReplayDefault) : check_replay_(check_replay) {}

  /// Creates a session from a quiver document and returns its state.
  Json create(const Json& quiver_doc);
  Json state(const std::string& id);
  Json mutate(const std::string& id, int vertex);  // 1-based vertex
  Json undo(const std::string& id);
  Json reset(const std::string& id);
  Json search(const std::string& id, const std::string& kind, int max_depth);
  Json certificates(const std::string& id);

  std::size_t size() const;

 private:
  struct Slot {
    std::mutex mutex;
    Session session;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;
  Json describe(const Session& s) const;

  bool check_replay_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::size_t next_id_ = 1;
};

/// Shared structured description of a framed state.
Json state_json(const IceQuiver& q, const MutationSequence& history);

}  // namespace qmut
