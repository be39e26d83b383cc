#include "qmut/sequence_engine.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <thread>
#include <unordered_set>

#include "qmut/errors.hpp"

namespace qmut {

MutationSequence MutationSequence::parse(std::string_view text, int n) {
  std::vector<int> steps;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return MutationSequence{};
  while (true) {
    const std::size_t comma = text.find(',');
    std::string_view tok = trim(text.substr(0, comma));
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw UsageError("bad sequence element '" + std::string(tok) + "'");
    }
    if (v < 1 || v > n) {
      throw UsageError("sequence element " + std::to_string(v) + " out of range 1.." +
                       std::to_string(n));
    }
    steps.push_back(v - 1);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return MutationSequence{std::move(steps)};
}

std::string MutationSequence::to_string() const {
  std::string out;
  for (std::size_t t = 0; t < steps_.size(); ++t) {
    if (t) out += ',';
    out += std::to_string(steps_[t] + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

ReplayTrace replay(const ExchangeMatrix& b, const MutationSequence& s) {
  for (int k : s.steps()) {
    if (k < 0 || k >= b.size()) {
      throw UsageError("replay: vertex " + std::to_string(k + 1) + " out of range 1.." +
                       std::to_string(b.size()));
    }
  }
  ReplayTrace trace;
  trace.states.push_back(frame(b));
  trace.statuses.push_back(vertex_statuses(trace.states.back()));
  for (int k : s.steps()) {
    const IceQuiver& cur = trace.states.back();
    StepFlags f;
    f.mutated_green = trace.statuses.back()[k] == VertexStatus::Green;
    f.head_of_multiple_arrow = is_head_of_multiple_arrow(cur, k);
    trace.flags.push_back(f);
    trace.states.push_back(mutate(cur, k));
    trace.statuses.push_back(vertex_statuses(trace.states.back()));
  }
  return trace;
}

namespace {

bool final_all_red(const ReplayTrace& t) {
  const auto& last = t.statuses.back();
  return std::all_of(last.begin(), last.end(), [](VertexStatus v) { return v == VertexStatus::Red; });
}

}  // namespace

bool verify_green(const ExchangeMatrix& b, const MutationSequence& s) {
  const ReplayTrace t = replay(b, s);
  return std::all_of(t.flags.begin(), t.flags.end(), [](const StepFlags& f) { return f.mutated_green; });
}

bool verify_maximal_green(const ExchangeMatrix& b, const MutationSequence& s) {
  const ReplayTrace t = replay(b, s);
  const bool green =
      std::all_of(t.flags.begin(), t.flags.end(), [](const StepFlags& f) { return f.mutated_green; });
  return green && final_all_red(t);
}

bool verify_green_to_red(const ExchangeMatrix& b, const MutationSequence& s) {
  return final_all_red(replay(b, s));
}

// ---------------------------------------------------------------------------
// Search

namespace {

using Expander = std::function<void(const IceQuiver&, int last_step, std::vector<int>&)>;

struct Node {
  IceQuiver q;
  int parent;
  int step;
};

MutationSequence path_to(const std::vector<Node>& nodes, int idx) {
  std::vector<int> steps;
  for (int v = idx; nodes[v].parent >= 0; v = nodes[v].parent) steps.push_back(nodes[v].step);
  std::reverse(steps.begin(), steps.end());
  return MutationSequence{std::move(steps)};
}

SearchOutcome breadth_first(const ExchangeMatrix& b, int max_depth, const SearchOptions& opt,
                            const Expander& expand) {
  std::vector<Node> nodes;
  nodes.push_back({frame(b), -1, -1});

  struct RefHash {
    const std::vector<Node>* nodes;
    std::size_t operator()(int i) const { return IceQuiverHash{}((*nodes)[i].q); }
  };
  struct RefEq {
    const std::vector<Node>* nodes;
    bool operator()(int a, int c) const { return (*nodes)[a].q == (*nodes)[c].q; }
  };
  std::unordered_set<int, RefHash, RefEq> seen(64, RefHash{&nodes}, RefEq{&nodes});
  seen.insert(0);

  struct Child {
    int parent;
    int step;
    IceQuiver q;
  };

  std::vector<int> level{0};
  bool truncated = false;
  const unsigned workers = std::max(1U, opt.threads);
  for (int depth = 0;; ++depth) {
    for (int idx : level) {
      if (all_red(nodes[idx].q)) return Found{path_to(nodes, idx)};
    }
    if (depth == max_depth || level.empty()) break;

    // Workers fill disjoint chunks; the merge below is sequential and in
    // frontier order, so results do not depend on the thread count.
    std::vector<std::vector<Child>> chunks(workers);
    std::vector<char> overflowed(workers, 0);
    auto work = [&](unsigned w) {
      std::vector<int> moves;
      for (std::size_t t = w; t < level.size(); t += workers) {
        const int idx = level[t];
        moves.clear();
        expand(nodes[idx].q, nodes[idx].step, moves);
        for (int k : moves) {
          try {
            chunks[w].push_back({idx, k, mutate(nodes[idx].q, k)});
          } catch (const ResourceError&) {
            overflowed[w] = 1;
          }
        }
      }
    };
    if (workers == 1 || level.size() < 64) {
      for (unsigned w = 0; w < workers; ++w) work(w);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }

    std::vector<std::size_t> cursor(workers, 0);
    std::vector<int> next;
    for (std::size_t t = 0; t < level.size(); ++t) {
      auto& chunk = chunks[t % workers];
      auto& pos = cursor[t % workers];
      while (pos < chunk.size() && chunk[pos].parent == level[t]) {
        Child& c = chunk[pos++];
        nodes.push_back({std::move(c.q), c.parent, c.step});
        const int id = static_cast<int>(nodes.size()) - 1;
        if (seen.insert(id).second) {
          next.push_back(id);
        } else {
          nodes.pop_back();
        }
        if (nodes.size() > opt.max_states) {
          throw ResourceError("search exceeded " + std::to_string(opt.max_states) + " states",
                              depth);
        }
      }
    }
    level = std::move(next);
    if (std::find(overflowed.begin(), overflowed.end(), 1) != overflowed.end()) truncated = true;
  }
  if (truncated) {
    throw ResourceError("matrix entries overflowed during search; no sequence found to depth " +
                            std::to_string(max_depth),
                        max_depth);
  }
  return ExhaustedToDepth{max_depth};
}

SearchOutcome iterative_deepening(const ExchangeMatrix& b, int max_depth, const SearchOptions& opt,
                                  const Expander& expand) {
  std::size_t visited = 0;
  bool truncated = false;
  std::vector<int> path;
  std::function<bool(const IceQuiver&, int)> dfs = [&](const IceQuiver& q, int budget) {
    if (all_red(q)) return true;
    if (budget == 0) return false;
    std::vector<int> moves;
    expand(q, path.empty() ? -1 : path.back(), moves);
    for (int k : moves) {
      if (++visited > opt.max_states) {
        throw ResourceError("search exceeded " + std::to_string(opt.max_states) + " states",
                            max_depth - budget);
      }
      IceQuiver child;
      try {
        child = mutate(q, k);
      } catch (const ResourceError&) {
        truncated = true;
        continue;
      }
      path.push_back(k);
      if (dfs(child, budget - 1)) return true;
      path.pop_back();
    }
    return false;
  };
  const IceQuiver start = frame(b);
  for (int limit = 0; limit <= max_depth; ++limit) {
    path.clear();
    if (dfs(start, limit)) return Found{MutationSequence{path}};
  }
  if (truncated) {
    throw ResourceError("matrix entries overflowed during search; no sequence found to depth " +
                            std::to_string(max_depth),
                        max_depth);
  }
  return ExhaustedToDepth{max_depth};
}

SearchOutcome run(const ExchangeMatrix& b, int max_depth, const SearchOptions& opt,
                  const Expander& expand) {
  if (max_depth < 0) throw UsageError("max_depth must be nonnegative");
  if (opt.strategy == SearchStrategy::IterativeDeepening) {
    return iterative_deepening(b, max_depth, opt, expand);
  }
  return breadth_first(b, max_depth, opt, expand);
}

}  // namespace

SearchOutcome search_mgs(const ExchangeMatrix& b, int max_depth, const SearchOptions& options) {
  if (options.check_obstructions) {
    if (auto cert = no_mgs_certificate(b)) return Obstructed{std::move(*cert)};
    if (auto cert = class_no_mgs_certificate(b)) return Obstructed{std::move(*cert)};
  }
  const bool prune = options.prune_bad_heads;
  Expander expand = [prune](const IceQuiver& q, int, std::vector<int>& moves) {
    for (int k = 0; k < q.mutable_count(); ++k) {
      if (vertex_status(q, k) != VertexStatus::Green) continue;
      if (prune && is_head_of_multiple_arrow(q, k)) continue;
      moves.push_back(k);
    }
  };
  return run(b, max_depth, options, expand);
}

SearchOutcome search_g2r(const ExchangeMatrix& b, int max_depth, const SearchOptions& options) {
  Expander expand = [](const IceQuiver& q, int last, std::vector<int>& moves) {
    for (int k = 0; k < q.mutable_count(); ++k) {
      if (k != last) moves.push_back(k);
    }
  };
  return run(b, max_depth, options, expand);
}

}  // namespace qmut
