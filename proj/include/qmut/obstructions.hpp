#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qmut/quiver_core.hpp"

namespace qmut {

using Arc = std::pair<int, int>;

/// Simple digraph underlying a quiver: arc (i, j) iff b(i, j) > 0.
struct Diagram {
  int n = 0;
  std::vector<Arc> arcs;  // sorted

  /// Index of arc (i, j), or -1.
  int arc_index(int i, int j) const;
};

Diagram diagram(const ExchangeMatrix& b);

/// A chordless cycle of the underlying undirected graph.
struct ChordlessCycle {
  std::vector<int> vertices;  // cyclic order, smallest vertex first
  std::vector<int> arcs;      // diagram arc indices, arcs[t] joins vertices[t] and vertices[t+1]
  bool oriented = false;      // all arcs point the same way around the cycle

  friend bool operator==(const ChordlessCycle&, const ChordlessCycle&) = default;
};

inline constexpr std::size_t kDefaultCycleCap = 200000;

/// All chordless cycles of length >= 3. Throws ResourceError past `cap`.
std::vector<ChordlessCycle> chordless_cycles(const Diagram& d, std::size_t cap = kDefaultCycleCap);

struct Coloring {
  std::vector<Arc> arcs;
  std::vector<int> values;  // 0 or 1, parallel to arcs
};

/// Chordless cycles whose admissibility equations sum to 0 = 1. Irreducible:
/// dropping any one cycle leaves a consistent system.
struct ColoringRefutation {
  std::vector<ChordlessCycle> cycles;
};

using ColoringResult = std::variant<Coloring, ColoringRefutation>;

/// Solves the GF(2) admissibility system: oriented chordless cycles sum to 1,
/// non-oriented ones to 0. Free arcs are set to 0.
ColoringResult admissible_coloring(const ExchangeMatrix& b, std::size_t cycle_cap = kDefaultCycleCap);

/// An oriented cycle all of whose arrows have multiplicity >= 2, rotated to
/// start at its smallest vertex.
std::optional<std::vector<int>> multiple_arrow_cycle(const ExchangeMatrix& b);

struct MultipleArrowCycle {
  std::vector<int> vertices;
};

struct ClassLevelObstruction {
  std::vector<Entry> column_gcds;
  ColoringRefutation refutation;
};

struct NoMgsCertificate {
  ExchangeMatrix quiver;
  std::variant<MultipleArrowCycle, ClassLevelObstruction> kind;
};

/// Multiple-arrow cycle certificate for b; a cycle in any induced subquiver
/// obstructs b itself.
std::optional<NoMgsCertificate> no_mgs_certificate(const ExchangeMatrix& b);

/// Class-level certificate: every column gcd >= 2 and no admissible coloring.
/// When present, no quiver mutation-equivalent to b has a maximal green sequence.
std::optional<NoMgsCertificate> class_no_mgs_certificate(const ExchangeMatrix& b);

/// Arrows i -> j between mutable vertices that lie on no bi-infinite path of
/// the mutable part, in increasing order.
std::vector<Arc> covering_pairs(const IceQuiver& q);
std::vector<Arc> covering_pairs(const ExchangeMatrix& b);

// ---------------------------------------------------------------------------
// Local acyclicity

/// One node of a local-acyclicity certificate.
///
/// `seed` is the ice quiver handed to this node. `labels[i]` is the original
/// (root) vertex of local mutable index i. `path` is a mutation sequence in
/// local indices applied to `seed`. A leaf has no children and its mutated
/// seed is acyclic. A split node names a covering arrow of the mutated seed;
/// children[0] certifies the freezing at the tail, children[1] at the head.
struct LaNode {
  IceQuiver seed;
  std::vector<int> labels;
  std::vector<int> path;
  std::optional<Arc> arrow;
  std::vector<LaNode> children;

  bool is_leaf() const { return children.empty(); }
};

struct LaCaps {
  int mutation_depth = 3;
  int recursion_depth = 6;
  std::size_t max_seeds = 20000;  // per node
};

/// Builds a certificate tree or returns nullopt (Unknown) when the caps run out.
std::optional<LaNode> local_acyclicity_certificate(const IceQuiver& q, const LaCaps& caps = {});

}  // namespace qmut
