#pragma once

// Test-side reference implementations. They use only the public value types
// and quiver_core mutation where noted, and are deliberately naive.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "qmut/laurent_poly.hpp"
#include "qmut/quiver_core.hpp"

namespace oracle {

using qmut::Entry;
using qmut::ExchangeMatrix;
using qmut::IceQuiver;

inline ExchangeMatrix random_matrix(std::mt19937_64& rng, int n, int max_abs) {
  ExchangeMatrix b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      b.set_arrows(i, j, static_cast<Entry>(rng() % (2 * max_abs + 1)) - max_abs);
    }
  }
  return b;
}

inline ExchangeMatrix random_acyclic(std::mt19937_64& rng, int n, int max_mult) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  ExchangeMatrix b(n);
  for (int a = 0; a < n; ++a) {
    for (int c = a + 1; c < n; ++c) {
      b.set_arrows(order[a], order[c], static_cast<Entry>(rng() % (max_mult + 1)));
    }
  }
  return b;
}

/// Arrow counts A[u][v] >= 0 over all vertices (mutable first, then frozen).
inline std::vector<std::vector<Entry>> arrow_counts(const IceQuiver& q) {
  const int n = q.mutable_count();
  const int m = q.row_count();
  std::vector<std::vector<Entry>> a(static_cast<std::size_t>(m), std::vector<Entry>(m, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = std::max<Entry>(q(i, j), 0);
  }
  for (int f = n; f < m; ++f) {
    for (int i = 0; i < n; ++i) {
      if (q(f, i) > 0) a[i][f] = q(f, i);
      if (q(f, i) < 0) a[f][i] = -q(f, i);
    }
  }
  return a;
}

/// Mutation by the three-step rule on arrows: add i -> j for every path
/// i -> k -> j, reverse arrows at k, cancel 2-cycles, drop frozen-frozen arrows.
inline IceQuiver quiver_rule_mutate(const IceQuiver& q, int k) {
  const int n = q.mutable_count();
  const int m = q.row_count();
  auto a = arrow_counts(q);
  auto b = a;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != k && j != k && i != j) b[i][j] += a[i][k] * a[k][j];
    }
  }
  for (int i = 0; i < m; ++i) {
    b[i][k] = a[k][i];
    b[k][i] = a[i][k];
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Entry c = std::min(b[i][j], b[j][i]);
      b[i][j] -= c;
      b[j][i] -= c;
    }
  }
  ExchangeMatrix p(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) p.set_arrows(i, j, b[i][j] - b[j][i]);
  }
  std::vector<std::vector<Entry>> rows;
  for (int f = n; f < m; ++f) {
    std::vector<Entry> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) row[i] = b[i][f] - b[f][i];
    rows.push_back(row);
  }
  return IceQuiver(p, rows);
}

inline bool reaches(const ExchangeMatrix& b, int from, int to) {
  std::vector<bool> seen(static_cast<std::size_t>(b.size()), false);
  std::vector<int> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (int w = 0; w < b.size(); ++w) {
      if (b(v, w) > 0 && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return false;
}

/// v lies on a directed cycle: some out-neighbour of v reaches v.
inline bool on_cycle(const ExchangeMatrix& b, int v) {
  for (int w = 0; w < b.size(); ++w) {
    if (b(v, w) > 0 && reaches(b, w, v)) return true;
  }
  return false;
}

/// Arrow i -> j lies on a bi-infinite path: a cycle vertex reaches i and j reaches a cycle vertex.
inline bool on_biinfinite_path(const ExchangeMatrix& b, int i, int j) {
  bool up = false;
  bool down = false;
  for (int u = 0; u < b.size(); ++u) {
    if (!on_cycle(b, u)) continue;
    up |= reaches(b, u, i);
    down |= reaches(b, j, u);
  }
  return up && down;
}

/// Isomorphism by trying every permutation.
inline bool isomorphic(const ExchangeMatrix& a, const ExchangeMatrix& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> p(static_cast<std::size_t>(a.size()));
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < a.size() && ok; ++i) {
      for (int j = 0; j < a.size() && ok; ++j) ok = a(p[i], p[j]) == b(i, j);
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// Mutation class by breadth-first closure with permutation isomorphism tests.
inline std::vector<ExchangeMatrix> brute_class(const ExchangeMatrix& b, std::size_t cap) {
  std::vector<ExchangeMatrix> found{b};
  for (std::size_t t = 0; t < found.size() && found.size() < cap; ++t) {
    for (int k = 0; k < b.size(); ++k) {
      const ExchangeMatrix m = qmut::mutate(found[t], k);
      if (std::none_of(found.begin(), found.end(), [&](const ExchangeMatrix& x) { return isomorphic(x, m); })) {
        found.push_back(m);
      }
    }
  }
  return found;
}

/// Chordless cycles as cyclically ordered vertex lists, via vertex subsets.
inline std::vector<std::vector<int>> induced_cycles(const ExchangeMatrix& b) {
  const int n = b.size();
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    std::vector<int> vs;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1U) vs.push_back(v);
    }
    if (vs.size() < 3) continue;
    bool ok = true;
    for (int v : vs) {
      int d = 0;
      for (int w : vs) d += b(v, w) != 0 ? 1 : 0;
      ok &= d == 2;
    }
    if (!ok) continue;
    std::vector<int> order{vs[0]};
    int prev = -1;
    while (order.size() <= vs.size()) {
      int nxt = -1;
      for (int w : vs) {
        if (w != prev && w != order.back() && b(order.back(), w) != 0) {
          nxt = w;
          break;
        }
      }
      if (nxt == order[0]) break;
      prev = order.back();
      order.push_back(nxt);
    }
    if (order.size() == vs.size()) out.push_back(order);
  }
  return out;
}

/// Whether some 0/1 assignment of arcs satisfies all chordless cycle parities.
inline bool coloring_exists(const ExchangeMatrix& b) {
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < b.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) {
      if (b(i, j) > 0) arcs.push_back({i, j});
    }
  }
  if (arcs.size() > 20) throw std::runtime_error("too many arcs for brute force");
  struct Constraint {
    std::uint32_t arcs = 0;
    int parity = 0;
  };
  std::vector<Constraint> cons;
  for (const auto& cyc : induced_cycles(b)) {
    Constraint c;
    bool fwd = true;
    bool bwd = true;
    for (std::size_t t = 0; t < cyc.size(); ++t) {
      int u = cyc[t];
      int v = cyc[(t + 1) % cyc.size()];
      if (b(u, v) < 0) {
        std::swap(u, v);
        fwd = false;
      } else {
        bwd = false;
      }
      const auto idx = std::find(arcs.begin(), arcs.end(), std::make_pair(u, v)) - arcs.begin();
      c.arcs |= 1U << idx;
    }
    c.parity = fwd || bwd ? 1 : 0;
    cons.push_back(c);
  }
  for (std::uint32_t col = 0; col < (1U << arcs.size()); ++col) {
    bool ok = true;
    for (const auto& c : cons) ok &= (std::popcount(col & c.arcs) % 2) == c.parity;
    if (ok) return true;
  }
  return false;
}

/// All maximal green sequences of length <= depth, by plain DFS.
inline std::optional<std::vector<int>> exhaustive_mgs(const ExchangeMatrix& b, int depth) {
  std::optional<std::vector<int>> best;
  std::vector<int> path;
  std::function<void(const IceQuiver&)> dfs = [&](const IceQuiver& q) {
    const int n = q.mutable_count();
    bool all_red = true;
    for (int i = 0; i < n; ++i) {
      bool neg = false;
      for (int f = n; f < q.row_count(); ++f) neg |= q(f, i) < 0;
      all_red &= neg;
    }
    if (all_red) {
      if (!best || path.size() < best->size()) best = path;
      return;
    }
    if (static_cast<int>(path.size()) == depth) return;
    for (int k = 0; k < n; ++k) {
      bool green = true;
      for (int f = n; f < q.row_count(); ++f) green &= q(f, k) >= 0;
      if (!green) continue;
      path.push_back(k);
      dfs(qmut::mutate(q, k));
      path.pop_back();
    }
  };
  dfs(qmut::frame(b));
  return best;
}

/// Cluster variables evaluated numerically: the exchange relation is applied
/// to rational values at a fixed point, never forming polynomials.
inline std::vector<qmut::Rational> numeric_cluster(const ExchangeMatrix& b, const std::vector<int>& seq,
                                                   const std::vector<qmut::Rational>& xs,
                                                   const std::vector<qmut::Rational>& ys) {
  IceQuiver q = qmut::frame(b);
  std::vector<qmut::Rational> x = xs;
  const int n = b.size();
  for (int k : seq) {
    qmut::Rational out = 1;
    qmut::Rational in = 1;
    for (int j = 0; j < n; ++j) {
      for (Entry e = 0; e < std::max<Entry>(q(k, j), 0); ++e) out *= x[j];
      for (Entry e = 0; e < std::max<Entry>(-q(k, j), 0); ++e) in *= x[j];
    }
    for (int f = 0; f < n; ++f) {
      const Entry c = q(n + f, k);
      for (Entry e = 0; e < std::max<Entry>(c, 0); ++e) out *= ys[f];
      for (Entry e = 0; e < std::max<Entry>(-c, 0); ++e) in *= ys[f];
    }
    x[k] = (out + in) / x[k];
    q = qmut::mutate(q, k);
  }
  return x;
}

}  // namespace oracle
