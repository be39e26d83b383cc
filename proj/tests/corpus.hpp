#pragma once

#include <cstdlib>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qmut/quiver_core.hpp"

namespace corpus {

/// Exchange multiplicity above which a Laurent case is redrawn.
inline constexpr qmut::Entry kMaxExchangeMultiplicity = 9;

struct LaurentCase {
  qmut::ExchangeMatrix b;
  std::vector<int> sequence;
};

struct LaurentCorpus {
  std::vector<LaurentCase> cases;
  int rejected = 0;
};

/// Rank 1..3, entries in [-3, 3], sequences of length 0..6 with repeats allowed.
/// A draw is rejected when some mutated vertex carries more than
/// kMaxExchangeMultiplicity arrows to one neighbour at the time of mutation.
inline LaurentCorpus laurent_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  LaurentCorpus out;
  while (static_cast<int>(out.cases.size()) < count) {
    const int n = 1 + static_cast<int>(rng() % 3);
    LaurentCase c{oracle::random_matrix(rng, n, 3), {}};
    const int len = static_cast<int>(rng() % 7);
    for (int s = 0; s < len; ++s) c.sequence.push_back(static_cast<int>(rng() % n));
    qmut::ExchangeMatrix b = c.b;
    bool ok = true;
    for (int k : c.sequence) {
      for (int j = 0; j < n; ++j) ok &= std::llabs(b(k, j)) <= kMaxExchangeMultiplicity;
      if (!ok) break;
      b = qmut::mutate(b, k);
    }
    if (ok) {
      out.cases.push_back(std::move(c));
    } else {
      ++out.rejected;
    }
  }
  return out;
}

}  // namespace corpus
