#include "qmut/obstructions.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>

#include "qmut/class_explorer.hpp"
#include "qmut/errors.hpp"

namespace qmut {

int Diagram::arc_index(int i, int j) const {
  auto it = std::lower_bound(arcs.begin(), arcs.end(), Arc{i, j});
  if (it == arcs.end() || *it != Arc{i, j}) return -1;
  return static_cast<int>(it - arcs.begin());
}

Diagram diagram(const ExchangeMatrix& b) {
  Diagram d;
  d.n = b.size();
  for (int i = 0; i < b.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) {
      if (b(i, j) > 0) d.arcs.emplace_back(i, j);
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Chordless cycles

namespace {

class CycleEnumerator {
 public:
  CycleEnumerator(const Diagram& d, std::size_t cap) : d_(d), cap_(cap) {
    adj_.assign(static_cast<std::size_t>(d.n), std::vector<bool>(d.n, false));
    for (auto [i, j] : d.arcs) adj_[i][j] = adj_[j][i] = true;
  }

  std::vector<ChordlessCycle> run() {
    for (int s = 0; s < d_.n; ++s) {
      for (int v = s + 1; v < d_.n; ++v) {
        if (!adj_[s][v]) continue;
        path_ = {s, v};
        extend(s);
      }
    }
    return std::move(out_);
  }

 private:
  void extend(int s) {
    const int last = path_.back();
    for (int w = s + 1; w < d_.n; ++w) {
      if (!adj_[last][w]) continue;
      if (std::find(path_.begin(), path_.end(), w) != path_.end()) continue;
      bool chord = false;
      for (std::size_t t = 1; t + 1 < path_.size(); ++t) {
        if (adj_[path_[t]][w]) {
          chord = true;
          break;
        }
      }
      if (chord) continue;
      if (adj_[s][w]) {
        if (path_[1] < w) record(w);
        continue;
      }
      path_.push_back(w);
      extend(s);
      path_.pop_back();
    }
  }

  void record(int w) {
    if (out_.size() >= cap_) {
      throw ResourceError("chordless cycle count exceeds cap " + std::to_string(cap_));
    }
    ChordlessCycle c;
    c.vertices = path_;
    c.vertices.push_back(w);
    const std::size_t len = c.vertices.size();
    bool forward = true;
    bool backward = true;
    for (std::size_t t = 0; t < len; ++t) {
      const int a = c.vertices[t];
      const int b = c.vertices[(t + 1) % len];
      int idx = d_.arc_index(a, b);
      if (idx >= 0) {
        backward = false;
      } else {
        idx = d_.arc_index(b, a);
        forward = false;
      }
      c.arcs.push_back(idx);
    }
    c.oriented = forward || backward;
    out_.push_back(std::move(c));
  }

  const Diagram& d_;
  std::size_t cap_;
  std::vector<std::vector<bool>> adj_;
  std::vector<int> path_;
  std::vector<ChordlessCycle> out_;
};

// Dense GF(2) vector.
struct Bits {
  std::vector<std::uint64_t> w;

  explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  bool test(std::size_t i) const { return i / 64 < w.size() && ((w[i / 64] >> (i % 64)) & 1U); }
  void flip(std::size_t i) {
    if (i / 64 >= w.size()) w.resize(i / 64 + 1, 0);
    w[i / 64] ^= std::uint64_t{1} << (i % 64);
  }
  void operator^=(const Bits& o) {
    if (o.w.size() > w.size()) w.resize(o.w.size(), 0);
    for (std::size_t k = 0; k < o.w.size(); ++k) w[k] ^= o.w[k];
  }
  bool none() const {
    return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
  }
  int lowest() const {
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] != 0) return static_cast<int>(k * 64 + static_cast<std::size_t>(__builtin_ctzll(w[k])));
    }
    return -1;
  }
};

struct Row {
  Bits coeffs;
  bool rhs = false;
  Bits provenance;  // which input equations were summed
  int pivot = -1;
};

struct Elimination {
  std::vector<Row> basis;
  std::optional<Bits> contradiction;
};

// Incremental Gauss-Jordan over GF(2). Stops at the first 0 = 1 row.
Elimination eliminate(const std::vector<ChordlessCycle>& cycles, std::size_t arc_count) {
  Elimination e;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    Row r;
    r.coeffs = Bits(arc_count);
    for (int a : cycles[c].arcs) r.coeffs.flip(static_cast<std::size_t>(a));
    r.rhs = cycles[c].oriented;
    r.provenance.flip(c);
    for (const Row& b : e.basis) {
      if (r.coeffs.test(static_cast<std::size_t>(b.pivot))) {
        r.coeffs ^= b.coeffs;
        r.rhs ^= b.rhs;
        r.provenance ^= b.provenance;
      }
    }
    if (r.coeffs.none()) {
      if (r.rhs) {
        e.contradiction = r.provenance;
        return e;
      }
      continue;
    }
    r.pivot = r.coeffs.lowest();
    for (Row& b : e.basis) {
      if (b.coeffs.test(static_cast<std::size_t>(r.pivot))) {
        b.coeffs ^= r.coeffs;
        b.rhs ^= r.rhs;
        b.provenance ^= r.provenance;
      }
    }
    e.basis.push_back(std::move(r));
  }
  return e;
}

}  // namespace

std::vector<ChordlessCycle> chordless_cycles(const Diagram& d, std::size_t cap) {
  return CycleEnumerator(d, cap).run();
}

ColoringResult admissible_coloring(const ExchangeMatrix& b, std::size_t cycle_cap) {
  const Diagram d = diagram(b);
  const std::vector<ChordlessCycle> cycles = chordless_cycles(d, cycle_cap);
  Elimination e = eliminate(cycles, d.arcs.size());

  if (!e.contradiction) {
    Coloring col;
    col.arcs = d.arcs;
    col.values.assign(d.arcs.size(), 0);
    for (const Row& r : e.basis) col.values[static_cast<std::size_t>(r.pivot)] = r.rhs ? 1 : 0;
    return col;
  }

  std::vector<ChordlessCycle> witness;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (e.contradiction->test(c)) witness.push_back(cycles[c]);
  }
  // Shrink to an irreducible inconsistent subsystem.
  for (std::size_t t = 0; t < witness.size();) {
    std::vector<ChordlessCycle> trial = witness;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(t));
    if (eliminate(trial, d.arcs.size()).contradiction) {
      witness = std::move(trial);
    } else {
      ++t;
    }
  }
  return ColoringRefutation{std::move(witness)};
}

// ---------------------------------------------------------------------------
// No-MGS certificates

std::optional<std::vector<int>> multiple_arrow_cycle(const ExchangeMatrix& b) {
  const int n = b.size();
  enum class Mark { White, Gray, Black };
  std::vector<Mark> mark(static_cast<std::size_t>(n), Mark::White);
  std::vector<int> stack;
  std::optional<std::vector<int>> found;

  std::function<bool(int)> visit = [&](int v) {
    mark[v] = Mark::Gray;
    stack.push_back(v);
    for (int u = 0; u < n; ++u) {
      if (b(v, u) < 2) continue;
      if (mark[u] == Mark::Gray) {
        auto start = std::find(stack.begin(), stack.end(), u);
        found = std::vector<int>(start, stack.end());
        return true;
      }
      if (mark[u] == Mark::White && visit(u)) return true;
    }
    stack.pop_back();
    mark[v] = Mark::Black;
    return false;
  };

  for (int s = 0; s < n && !found; ++s) {
    if (mark[s] == Mark::White) visit(s);
  }
  if (found) {
    std::rotate(found->begin(), std::min_element(found->begin(), found->end()), found->end());
  }
  return found;
}

std::optional<NoMgsCertificate> no_mgs_certificate(const ExchangeMatrix& b) {
  if (auto cycle = multiple_arrow_cycle(b)) {
    return NoMgsCertificate{b, MultipleArrowCycle{std::move(*cycle)}};
  }
  return std::nullopt;
}

std::optional<NoMgsCertificate> class_no_mgs_certificate(const ExchangeMatrix& b) {
  if (b.size() == 0) return std::nullopt;
  std::vector<Entry> gcds = column_gcds(b);
  if (std::any_of(gcds.begin(), gcds.end(), [](Entry g) { return g < 2; })) return std::nullopt;
  ColoringResult col = admissible_coloring(b);
  if (auto* ref = std::get_if<ColoringRefutation>(&col)) {
    return NoMgsCertificate{b, ClassLevelObstruction{std::move(gcds), std::move(*ref)}};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Covering pairs

namespace {

// Tarjan's algorithm; returns the component id of each vertex.
std::vector<int> strongly_connected(const ExchangeMatrix& b, std::vector<int>& sizes) {
  const int n = b.size();
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  int counter = 0;
  sizes.clear();

  std::function<void(int)> connect = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int u = 0; u < n; ++u) {
      if (b(v, u) <= 0) continue;
      if (index[u] < 0) {
        connect(u);
        low[v] = std::min(low[v], low[u]);
      } else if (on_stack[u]) {
        low[v] = std::min(low[v], index[u]);
      }
    }
    if (low[v] == index[v]) {
      const int id = static_cast<int>(sizes.size());
      sizes.push_back(0);
      int u;
      do {
        u = stack.back();
        stack.pop_back();
        on_stack[u] = false;
        comp[u] = id;
        ++sizes[id];
      } while (u != v);
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[v] < 0) connect(v);
  }
  return comp;
}

std::vector<bool> reach_from(const ExchangeMatrix& b, const std::vector<bool>& sources,
                             bool backwards) {
  const int n = b.size();
  std::vector<bool> seen = sources;
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (seen[v]) stack.push_back(v);
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < n; ++u) {
      const Entry e = backwards ? b(u, v) : b(v, u);
      if (e > 0 && !seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<Arc> covering_pairs(const ExchangeMatrix& b) {
  const int n = b.size();
  std::vector<int> sizes;
  const std::vector<int> comp = strongly_connected(b, sizes);
  std::vector<bool> on_cycle(static_cast<std::size_t>(n), false);
  for (int v = 0; v < n; ++v) on_cycle[v] = sizes[comp[v]] >= 2;

  const std::vector<bool> cycle_upstream = reach_from(b, on_cycle, false);
  const std::vector<bool> cycle_downstream = reach_from(b, on_cycle, true);

  std::vector<Arc> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (b(i, j) > 0 && !(cycle_upstream[i] && cycle_downstream[j])) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<Arc> covering_pairs(const IceQuiver& q) { return covering_pairs(q.principal()); }

// ---------------------------------------------------------------------------
// Local acyclicity

namespace {

class LaSearch {
 public:
  explicit LaSearch(const LaCaps& caps) : caps_(caps) {}

  std::optional<LaNode> solve(const IceQuiver& seed, const std::vector<int>& labels, int depth) {
    if (depth < 0) return std::nullopt;

    struct State {
      IceQuiver q;
      std::vector<int> path;
    };
    std::vector<State> level{{seed, {}}};
    std::unordered_set<IceQuiver, IceQuiverHash> seen{seed};

    for (int d = 0; d <= caps_.mutation_depth && !level.empty(); ++d) {
      for (const State& s : level) {
        if (is_acyclic(s.q)) return LaNode{seed, labels, s.path, std::nullopt, {}};
      }
      for (const State& s : level) {
        for (const Arc& arc : covering_pairs(s.q)) {
          auto tail = solve(freeze(s.q, {arc.first}), drop(labels, arc.first), depth - 1);
          if (!tail) continue;
          auto head = solve(freeze(s.q, {arc.second}), drop(labels, arc.second), depth - 1);
          if (!head) continue;
          return LaNode{seed, labels, s.path, arc, {std::move(*tail), std::move(*head)}};
        }
      }
      if (d == caps_.mutation_depth) break;
      std::vector<State> next;
      for (const State& s : level) {
        for (int k = 0; k < s.q.mutable_count(); ++k) {
          IceQuiver m = mutate(s.q, k);
          if (!seen.insert(m).second) continue;
          if (++visited_ > caps_.max_seeds) return std::nullopt;
          std::vector<int> p = s.path;
          p.push_back(k);
          next.push_back({std::move(m), std::move(p)});
        }
      }
      level = std::move(next);
    }
    return std::nullopt;
  }

 private:
  static std::vector<int> drop(std::vector<int> labels, int index) {
    labels.erase(labels.begin() + index);
    return labels;
  }

  const LaCaps& caps_;
  std::size_t visited_ = 0;
};

}  // namespace

std::optional<LaNode> local_acyclicity_certificate(const IceQuiver& q, const LaCaps& caps) {
  if (caps.mutation_depth < 0 || caps.recursion_depth < 0) {
    throw UsageError("local_acyclicity_certificate: caps must be nonnegative");
  }
  std::vector<int> labels(static_cast<std::size_t>(q.mutable_count()));
  for (int i = 0; i < q.mutable_count(); ++i) labels[i] = i;
  LaSearch search(caps);
  return search.solve(q, labels, caps.recursion_depth);
}

}  // namespace qmut
