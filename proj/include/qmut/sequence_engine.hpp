#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qmut/obstructions.hpp"
#include "qmut/quiver_core.hpp"

namespace qmut {

/// Mutation sequence with 0-based steps; text form is 1-based and comma separated.
class MutationSequence {
 public:
  MutationSequence() = default;
  explicit MutationSequence(std::vector<int> steps) : steps_(std::move(steps)) {}

  /// Parses "1,4,3,4,2,4" (empty string for the empty sequence). Indices
  /// must lie in [1, n]; throws UsageError otherwise.
  static MutationSequence parse(std::string_view text, int n);

  const std::vector<int>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  void push_back(int k) { steps_.push_back(k); }
  void pop_back() { steps_.pop_back(); }

  std::string to_string() const;

  friend bool operator==(const MutationSequence&, const MutationSequence&) = default;

 private:
  std::vector<int> steps_;
};

struct StepFlags {
  bool mutated_green = false;
  bool head_of_multiple_arrow = false;
};

struct ReplayTrace {
  std::vector<IceQuiver> states;                   // size() == steps + 1
  std::vector<std::vector<VertexStatus>> statuses;  // parallel to states
  std::vector<StepFlags> flags;                    // one per step
};

/// Replays s from frame(b).
ReplayTrace replay(const ExchangeMatrix& b, const MutationSequence& s);

bool verify_green(const ExchangeMatrix& b, const MutationSequence& s);
bool verify_maximal_green(const ExchangeMatrix& b, const MutationSequence& s);
bool verify_green_to_red(const ExchangeMatrix& b, const MutationSequence& s);

struct Found {
  MutationSequence sequence;
};
struct ExhaustedToDepth {
  int depth = 0;
};
struct Obstructed {
  NoMgsCertificate certificate;
};
using SearchOutcome = std::variant<Found, ExhaustedToDepth, Obstructed>;

enum class SearchStrategy { BreadthFirst, IterativeDeepening };

struct SearchOptions {
  /// Skip green vertices that are the head of a multiple arrow, frozen arrows included.
  bool prune_bad_heads = true;
  /// Consult the no-MGS certificates before searching.
  bool check_obstructions = true;
  SearchStrategy strategy = SearchStrategy::BreadthFirst;
  std::size_t max_states = 4'000'000;
  /// Worker threads used to expand each breadth-first level.
  unsigned threads = 1;
};

SearchOutcome search_mgs(const ExchangeMatrix& b, int max_depth, const SearchOptions& options = {});

/// Green-to-red search expands every mutable vertex; prune_bad_heads and
/// check_obstructions are ignored.
SearchOutcome search_g2r(const ExchangeMatrix& b, int max_depth, const SearchOptions& options = {});

}  // namespace qmut
