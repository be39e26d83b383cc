#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "qmut/canonical.hpp"
#include "qmut/obstructions.hpp"
#include "qmut/quiver_core.hpp"

namespace qmut {

struct ClassCaps {
  std::size_t max_quivers = 10000;
  Entry max_multiplicity = 32;
};

/// Mutation class up to relabeling.
struct MutationClass {
  std::vector<ExchangeMatrix> representatives;  // canonical matrices, BFS discovery order
  /// edges[r][k]: representative reached by mutating representatives[r] at
  /// vertex k, or -1 when that neighbour was cut off by a cap.
  std::vector<std::vector<int>> edges;
  bool complete = false;
};

/// Breadth-first closure over canonical forms. Hitting a cap yields a partial
/// class with complete == false.
MutationClass enumerate_class(const ExchangeMatrix& b, const ClassCaps& caps = {});

/// Rank <= 2 components are finite; a connected component of rank >= 3 is
/// infinite exactly when its class contains an arrow of multiplicity >= 3.
bool is_mutation_finite(const ExchangeMatrix& b);

struct AcyclicFound {
  std::vector<int> sequence;
  ExchangeMatrix endpoint;
};
struct NotWithinCap {};
struct ImpossibleByColoring {
  ColoringRefutation refutation;
};
using AcyclicSearchResult = std::variant<AcyclicFound, NotWithinCap, ImpossibleByColoring>;

AcyclicSearchResult class_contains_acyclic(const ExchangeMatrix& b, const ClassCaps& caps = {});

/// gcd of |entries| in each column; an all-zero column gives 0.
std::vector<Entry> column_gcds(const ExchangeMatrix& b);
/// Includes frozen rows.
std::vector<Entry> column_gcds(const IceQuiver& q);

}  // namespace qmut
