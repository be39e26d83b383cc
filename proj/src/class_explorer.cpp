#include "qmut/class_explorer.hpp"

#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "qmut/errors.hpp"

namespace qmut {

MutationClass enumerate_class(const ExchangeMatrix& b, const ClassCaps& caps) {
  if (caps.max_quivers == 0 || caps.max_multiplicity <= 0) {
    throw UsageError("enumerate_class: caps must be positive");
  }
  MutationClass cls;
  cls.complete = true;
  std::unordered_map<ExchangeMatrix, int, ExchangeMatrixHash> index;

  auto add = [&](ExchangeMatrix m) {
    const int id = static_cast<int>(cls.representatives.size());
    index.emplace(m, id);
    cls.representatives.push_back(std::move(m));
    cls.edges.emplace_back(static_cast<std::size_t>(b.size()), -1);
    return id;
  };
  add(canonical_form(b).matrix);

  for (std::size_t r = 0; r < cls.representatives.size(); ++r) {
    for (int k = 0; k < b.size(); ++k) {
      ExchangeMatrix m = mutate(cls.representatives[r], k);
      if (m.max_multiplicity() > caps.max_multiplicity) {
        cls.complete = false;
        continue;
      }
      ExchangeMatrix c = canonical_form(m).matrix;
      if (auto it = index.find(c); it != index.end()) {
        cls.edges[r][k] = it->second;
        continue;
      }
      if (cls.representatives.size() >= caps.max_quivers) {
        cls.complete = false;
        continue;
      }
      cls.edges[r][k] = add(std::move(c));
    }
  }
  return cls;
}

namespace {

// Closure of a connected matrix of rank >= 3, abandoning at multiplicity >= 3.
// Multiplicities stay <= 2 while exploring, so the closure is finite.
bool connected_class_is_finite(const ExchangeMatrix& b) {
  if (b.max_multiplicity() >= 3) return false;
  std::unordered_set<ExchangeMatrix, ExchangeMatrixHash> seen;
  std::deque<ExchangeMatrix> queue;
  ExchangeMatrix start = canonical_form(b).matrix;
  seen.insert(start);
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    ExchangeMatrix cur = std::move(queue.front());
    queue.pop_front();
    for (int k = 0; k < cur.size(); ++k) {
      ExchangeMatrix m = mutate(cur, k);
      if (m.max_multiplicity() >= 3) return false;
      ExchangeMatrix c = canonical_form(m).matrix;
      if (seen.insert(c).second) queue.push_back(std::move(c));
    }
  }
  return true;
}

}  // namespace

bool is_mutation_finite(const ExchangeMatrix& b) {
  for (const auto& comp : connected_components(b)) {
    if (comp.size() <= 2) continue;
    if (!connected_class_is_finite(induced_subquiver(b, comp))) return false;
  }
  return true;
}

AcyclicSearchResult class_contains_acyclic(const ExchangeMatrix& b, const ClassCaps& caps) {
  if (is_acyclic(b)) return AcyclicFound{{}, b};
  ColoringResult col = admissible_coloring(b);
  if (auto* ref = std::get_if<ColoringRefutation>(&col)) {
    return ImpossibleByColoring{std::move(*ref)};
  }

  struct Node {
    ExchangeMatrix m;
    std::vector<int> path;
  };
  std::unordered_set<ExchangeMatrix, ExchangeMatrixHash> seen{canonical_form(b).matrix};
  std::deque<Node> queue{{b, {}}};
  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    for (int k = 0; k < b.size(); ++k) {
      ExchangeMatrix m = mutate(cur.m, k);
      if (m.max_multiplicity() > caps.max_multiplicity) continue;
      if (!seen.insert(canonical_form(m).matrix).second) continue;
      std::vector<int> path = cur.path;
      path.push_back(k);
      if (is_acyclic(m)) return AcyclicFound{std::move(path), std::move(m)};
      if (seen.size() >= caps.max_quivers) return NotWithinCap{};
      queue.push_back({std::move(m), std::move(path)});
    }
  }
  return NotWithinCap{};
}

std::vector<Entry> column_gcds(const ExchangeMatrix& b) {
  std::vector<Entry> out(static_cast<std::size_t>(b.size()), 0);
  for (int j = 0; j < b.size(); ++j) {
    for (int i = 0; i < b.size(); ++i) out[j] = std::gcd(out[j], b(i, j));
  }
  return out;
}

std::vector<Entry> column_gcds(const IceQuiver& q) {
  std::vector<Entry> out(static_cast<std::size_t>(q.mutable_count()), 0);
  for (int j = 0; j < q.mutable_count(); ++j) {
    for (int r = 0; r < q.row_count(); ++r) out[j] = std::gcd(out[j], q(r, j));
  }
  return out;
}

}  // namespace qmut
