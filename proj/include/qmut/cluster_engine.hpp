#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qmut/laurent_poly.hpp"
#include "qmut/quiver_core.hpp"
#include "qmut/sequence_engine.hpp"

namespace qmut {

/// Cluster expressed in the initial cluster, together with its ice quiver.
/// Frozen row f of the ice quiver carries coefficient y_{f-n+1}.
struct Seed {
  std::vector<LaurentPoly> cluster;
  IceQuiver ice;
};

/// Initial seed (x_1..x_n) on an arbitrary ice quiver.
Seed initial_seed(const IceQuiver& q);
/// Initial seed with principal coefficients: ice = frame(b).
Seed initial_seed(const ExchangeMatrix& b);

/// The two products of the exchange relation at k in the seed's current
/// cluster: outgoing (arrows k -> j, k -> j*) and incoming (arrows i -> k, i* -> k).
std::pair<LaurentPoly, LaurentPoly> exchange_terms(const Seed& s, int k);

/// Seed mutation with exact Laurent division. Throws LaurentViolation when the
/// quotient is not Laurent.
Seed seed_mutate(const Seed& s, int k);

/// Last mutated cluster variable after replaying seq from the principal seed
/// of b; x_n for the empty sequence. Throws NegativeCoefficient if any
/// coefficient is not positive.
LaurentPoly cluster_variable(const ExchangeMatrix& b, const MutationSequence& seq);

/// True iff no two columns are linearly dependent over the rationals.
bool is_coprime_matrix(const ExchangeMatrix& b);
bool is_coprime_matrix(const IceQuiver& q);

/// Exchange binomial at k of the initial principal-coefficient seed of b,
/// over nx = ny = b.size() variables.
LaurentPoly initial_exchange_binomial(const ExchangeMatrix& b, int k);

/// Whether p lies in the Laurent ring of the seed adjacent in direction k.
/// Writing p = sum_j p_j x_k^j, this holds iff f_k^m divides p_{-m} for every m >= 1.
bool in_adjacent_laurent_ring(const LaurentPoly& p, const ExchangeMatrix& b, int k);

/// Verdict for every direction (index k for direction k+1).
std::vector<bool> adjacent_membership(const LaurentPoly& p, const ExchangeMatrix& b);

/// Membership in the intersection of the initial and the n adjacent Laurent
/// rings; this is the upper cluster algebra when b is totally coprime.
bool depth1_upper_membership(const LaurentPoly& p, const ExchangeMatrix& b);

/// Degrees of x_1..x_n; coefficients have degree 0.
struct GradingVector {
  std::vector<Entry> degrees;
};

/// Valid iff sum_i b(i, k) * d_i == 0 for every k.
bool grading_check(const ExchangeMatrix& b, const GradingVector& d);

/// Common degree of all terms, or nullopt when p is not homogeneous (or zero).
std::optional<Entry> degree(const LaurentPoly& p, const GradingVector& d);

}  // namespace qmut
