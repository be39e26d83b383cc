#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmut/quiver_core.hpp"

namespace qmut {

inline constexpr int kDefaultCanonicalBound = 12;

struct CanonicalForm {
  ExchangeMatrix matrix;
  /// permutation[p] is the input vertex placed at position p.
  std::vector<int> permutation;
};

/// Representative of b under simultaneous row/column permutation.
///
/// Vertices are first split into classes by iterated neighbourhood
/// refinement; the representative is the relabeling, among those listing the
/// classes in their canonical order, whose strictly lower triangle is least in
/// row-major lexicographic order. Throws ResourceError when b.size() > bound.
CanonicalForm canonical_form(const ExchangeMatrix& b, int bound = kDefaultCanonicalBound);

/// 64-bit FNV-1a digest of a (canonical) matrix, as 16 hex digits.
std::string canonical_hash(const ExchangeMatrix& canonical);

}  // namespace qmut
