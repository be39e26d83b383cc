#include "qmut/certificate_check.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "qmut/errors.hpp"

namespace qmut {

namespace {

struct Reject {
  std::string reason;
};

void require(bool cond, const std::string& reason) {
  if (!cond) throw Reject{reason};
}

IceQuiver read_quiver(const Json& doc) {
  require(doc.is_object() && doc.contains("n") && doc.contains("matrix"), "quiver snapshot needs n and matrix");
  const int n = doc["n"].get<int>();
  const auto rows = doc["matrix"].get<std::vector<std::vector<Entry>>>();
  require(static_cast<int>(rows.size()) == n, "quiver snapshot has the wrong number of rows");
  std::vector<std::vector<Entry>> frozen;
  if (doc.contains("frozen_rows")) frozen = doc["frozen_rows"].get<std::vector<std::vector<Entry>>>();
  return IceQuiver(ExchangeMatrix::from_rows(rows), frozen);
}

std::vector<int> read_vertices(const Json& doc, int n) {
  std::vector<int> out;
  for (const auto& v : doc) {
    const int k = v.get<int>();
    require(k >= 1 && k <= n, "vertex " + std::to_string(k) + " out of range");
    out.push_back(k - 1);
  }
  return out;
}

bool adjacent(const ExchangeMatrix& b, int i, int j) { return b(i, j) != 0; }

// Red when some frozen entry is negative; mixed columns are rejected.
bool is_red(const IceQuiver& q, int i) {
  bool pos = false;
  bool neg = false;
  for (int f = q.mutable_count(); f < q.row_count(); ++f) {
    pos |= q(f, i) > 0;
    neg |= q(f, i) < 0;
  }
  require(!(pos && neg), "frozen column of vertex " + std::to_string(i + 1) + " is not sign coherent");
  return neg;
}

bool has_directed_cycle(const ExchangeMatrix& b) {
  const int n = b.size();
  std::vector<int> state(n, 0);
  std::vector<std::pair<int, int>> stack;
  for (int s = 0; s < n; ++s) {
    if (state[s]) continue;
    stack.push_back({s, 0});
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == n) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      const int w = next++;
      if (b(v, w) <= 0) continue;
      if (state[w] == 1) return true;
      if (state[w] == 0) {
        state[w] = 1;
        stack.push_back({w, 0});
      }
    }
  }
  return false;
}

// ends[v]: some walk of exactly n arrows ends at v (forward) or starts at v (backward).
std::vector<bool> long_walks(const ExchangeMatrix& b, bool forward) {
  const int n = b.size();
  std::vector<bool> cur(n, true);
  for (int step = 0; step < n; ++step) {
    std::vector<bool> next(n, false);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (b(u, v) <= 0) continue;
        if (forward && cur[u]) next[v] = true;
        if (!forward && cur[v]) next[u] = true;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

bool on_biinfinite_path(const ExchangeMatrix& b, int i, int j) {
  return long_walks(b, true)[i] && long_walks(b, false)[j];
}

struct CycleCheck {
  bool oriented;
  std::vector<std::pair<int, int>> arcs;  // directed arcs, as in the diagram
};

CycleCheck check_chordless(const ExchangeMatrix& b, const std::vector<int>& vs) {
  const std::size_t k = vs.size();
  require(k >= 3, "cycle shorter than 3");
  require(std::set<int>(vs.begin(), vs.end()).size() == k, "cycle repeats a vertex");
  CycleCheck out{true, {}};
  bool forward = true;
  bool backward = true;
  for (std::size_t t = 0; t < k; ++t) {
    const int a = vs[t];
    const int c = vs[(t + 1) % k];
    require(adjacent(b, a, c), "cycle vertices " + std::to_string(a + 1) + "," + std::to_string(c + 1) + " are not adjacent");
    if (b(a, c) > 0) {
      out.arcs.push_back({a, c});
      backward = false;
    } else {
      out.arcs.push_back({c, a});
      forward = false;
    }
    for (std::size_t u = t + 2; u < k; ++u) {
      if (t == 0 && u == k - 1) continue;
      require(!adjacent(b, a, vs[u]), "cycle has a chord");
    }
  }
  out.oriented = forward || backward;
  return out;
}

void check_refutation(const ExchangeMatrix& b, const Json& cycles) {
  require(cycles.is_array() && !cycles.empty(), "refutation has no cycles");
  std::map<std::pair<int, int>, int> arc_uses;
  int oriented = 0;
  for (const auto& c : cycles) {
    const auto vs = read_vertices(c.at("vertices"), b.size());
    const CycleCheck cc = check_chordless(b, vs);
    require(cc.oriented == c.at("oriented").get<bool>(), "cycle orientation flag is wrong");
    oriented += cc.oriented ? 1 : 0;
    for (const auto& a : cc.arcs) ++arc_uses[a];
  }
  for (const auto& [a, uses] : arc_uses) {
    require(uses % 2 == 0, "arc " + std::to_string(a.first + 1) + "->" + std::to_string(a.second + 1) +
                               " is used an odd number of times");
  }
  require(oriented % 2 == 1, "the number of oriented cycles is even");
}

void check_coloring(const ExchangeMatrix& b, const Json& doc) {
  const int n = b.size();
  require(n <= 20, "coloring check limited to 20 vertices");
  std::map<std::pair<int, int>, int> value;
  const auto& arcs = doc.at("arcs");
  const auto& values = doc.at("values");
  require(arcs.size() == values.size(), "arcs and values differ in length");
  for (std::size_t t = 0; t < arcs.size(); ++t) {
    const auto ij = read_vertices(arcs[t], n);
    require(ij.size() == 2 && b(ij[0], ij[1]) > 0, "listed arc is not an arrow");
    const int v = values[t].get<int>();
    require(v == 0 || v == 1, "coloring values must be 0 or 1");
    value[{ij[0], ij[1]}] = v;
  }
  int arrow_count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) arrow_count += b(i, j) > 0 ? 1 : 0;
  }
  require(static_cast<int>(value.size()) == arrow_count, "coloring does not cover every arc exactly once");

  // Every vertex subset inducing a cycle.
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) < 3) continue;
    std::vector<int> vs;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1U) vs.push_back(v);
    }
    bool degree_two = true;
    for (int v : vs) {
      int deg = 0;
      for (int w : vs) deg += adjacent(b, v, w) ? 1 : 0;
      degree_two &= deg == 2;
    }
    if (!degree_two) continue;
    std::vector<int> order{vs.front()};
    int prev = -1;
    while (true) {
      const int cur = order.back();
      int nxt = -1;
      for (int w : vs) {
        if (w != prev && w != cur && adjacent(b, cur, w)) {
          nxt = w;
          break;
        }
      }
      if (nxt == order.front()) break;
      prev = cur;
      order.push_back(nxt);
    }
    if (order.size() != vs.size()) continue;
    const CycleCheck cc = check_chordless(b, order);
    int sum = 0;
    for (const auto& a : cc.arcs) sum += value[a];
    require(sum % 2 == (cc.oriented ? 1 : 0), "coloring violates the condition on a chordless cycle");
  }
}

std::vector<Entry> gcds(const ExchangeMatrix& b) {
  std::vector<Entry> out;
  for (int j = 0; j < b.size(); ++j) {
    Entry g = 0;
    for (int i = 0; i < b.size(); ++i) g = std::gcd(g, b(i, j) < 0 ? -b(i, j) : b(i, j));
    out.push_back(g);
  }
  return out;
}

void check_no_mgs(const Json& doc) {
  const ExchangeMatrix b = read_quiver(doc.at("quiver")).principal();
  const std::string variant = doc.at("variant").get<std::string>();
  if (variant == "multiple_arrow_cycle") {
    const auto vs = read_vertices(doc.at("cycle"), b.size());
    require(vs.size() >= 2, "cycle too short");
    require(std::set<int>(vs.begin(), vs.end()).size() == vs.size(), "cycle repeats a vertex");
    for (std::size_t t = 0; t < vs.size(); ++t) {
      const int a = vs[t];
      const int c = vs[(t + 1) % vs.size()];
      require(b(a, c) >= 2, "arrow " + std::to_string(a + 1) + "->" + std::to_string(c + 1) + " is not multiple");
    }
    return;
  }
  require(variant == "class_level", "unknown no_mgs variant");
  const auto expected = gcds(b);
  require(doc.at("column_gcds").get<std::vector<Entry>>() == expected, "column gcds do not match");
  for (Entry g : expected) require(g >= 2, "some column gcd is below 2");
  check_refutation(b, doc.at("cycles"));
}

void check_la_node(const Json& node, const IceQuiver& seed, const std::vector<int>& labels, int depth) {
  require(depth <= 64, "certificate tree too deep");
  require(read_quiver(node.at("seed")) == seed, "seed snapshot does not match the parent");
  require(node.at("labels").get<std::vector<int>>().size() == labels.size(), "labels have the wrong size");
  for (std::size_t t = 0; t < labels.size(); ++t) {
    require(node["labels"][t].get<int>() == labels[t] + 1, "labels do not match the parent");
  }
  auto local = [&](int root_label) {
    const auto it = std::find(labels.begin(), labels.end(), root_label - 1);
    require(it != labels.end(), "vertex " + std::to_string(root_label) + " is not mutable here");
    return static_cast<int>(it - labels.begin());
  };

  IceQuiver q = seed;
  for (const auto& v : node.at("sequence")) q = mutate(q, local(v.get<int>()));
  const ExchangeMatrix b = q.principal();

  const std::string type = node.at("type").get<std::string>();
  if (type == "leaf") {
    require(!has_directed_cycle(b), "leaf seed is not acyclic");
    return;
  }
  require(type == "split", "unknown node type");
  const int i = local(node.at("arrow")[0].get<int>());
  const int j = local(node.at("arrow")[1].get<int>());
  require(b(i, j) > 0, "split arrow is not an arrow of the mutated seed");
  require(!on_biinfinite_path(b, i, j), "split arrow lies on a bi-infinite path");

  for (int side = 0; side < 2; ++side) {
    const int v = side == 0 ? i : j;
    std::vector<int> child_labels;
    for (std::size_t t = 0; t < labels.size(); ++t) {
      if (static_cast<int>(t) != v) child_labels.push_back(labels[t]);
    }
    check_la_node(node.at(side == 0 ? "freeze_tail" : "freeze_head"), freeze(q, {v}), child_labels, depth + 1);
  }
}

void check_local_acyclicity(const Json& doc) {
  const IceQuiver q = read_quiver(doc.at("quiver"));
  std::vector<int> labels(static_cast<std::size_t>(q.mutable_count()));
  std::iota(labels.begin(), labels.end(), 0);
  check_la_node(doc.at("root"), q, labels, 0);
}

void check_covering_pairs(const Json& doc) {
  const ExchangeMatrix b = read_quiver(doc.at("quiver")).principal();
  std::set<std::pair<int, int>> listed;
  for (const auto& a : doc.at("pairs")) {
    const auto ij = read_vertices(a, b.size());
    require(ij.size() == 2 && b(ij[0], ij[1]) > 0, "listed pair is not an arrow");
    listed.insert({ij[0], ij[1]});
  }
  for (int i = 0; i < b.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) {
      if (b(i, j) <= 0) continue;
      const bool covering = !on_biinfinite_path(b, i, j);
      require(covering == (listed.count({i, j}) > 0),
              "arrow " + std::to_string(i + 1) + "->" + std::to_string(j + 1) +
                  (covering ? " is a covering pair but not listed" : " is listed but lies on a bi-infinite path"));
    }
  }
}

void check_sequence(const Json& doc, bool maximal_green) {
  const ExchangeMatrix b = read_quiver(doc.at("quiver")).principal();
  const int n = b.size();
  std::vector<std::vector<Entry>> identity(static_cast<std::size_t>(n), std::vector<Entry>(n, 0));
  for (int i = 0; i < n; ++i) identity[i][i] = 1;
  IceQuiver q(b, identity);
  for (int k : read_vertices(doc.at("sequence"), n)) {
    if (maximal_green) require(!is_red(q, k), "step at vertex " + std::to_string(k + 1) + " is not green");
    q = mutate(q, k);
  }
  for (int i = 0; i < n; ++i) require(is_red(q, i), "vertex " + std::to_string(i + 1) + " is not red at the end");
}

}  // namespace

CheckResult check_certificate(const Json& doc) {
  try {
    require(doc.is_object() && doc.contains("kind"), "certificate needs a kind");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "no_mgs") {
      check_no_mgs(doc);
    } else if (kind == "coloring") {
      check_coloring(read_quiver(doc.at("quiver")).principal(), doc);
    } else if (kind == "coloring_refutation") {
      check_refutation(read_quiver(doc.at("quiver")).principal(), doc.at("cycles"));
    } else if (kind == "covering_pairs") {
      check_covering_pairs(doc);
    } else if (kind == "local_acyclicity") {
      check_local_acyclicity(doc);
    } else if (kind == "green_to_red") {
      check_sequence(doc, false);
    } else if (kind == "maximal_green") {
      check_sequence(doc, true);
    } else {
      return {false, "unknown certificate kind '" + kind + "'"};
    }
  } catch (const Reject& r) {
    return {false, r.reason};
  } catch (const Json::exception& e) {
    return {false, std::string("malformed certificate: ") + e.what()};
  } catch (const Error& e) {
    return {false, e.what()};
  }
  return {true, {}};
}

}  // namespace qmut
