#include "qmut/cluster_engine.hpp"

#include <functional>
#include <string>

#include "qmut/errors.hpp"

namespace qmut {

Seed initial_seed(const IceQuiver& q) {
  const int n = q.mutable_count();
  const int ny = q.frozen_count();
  Seed s;
  s.ice = q;
  for (int i = 0; i < n; ++i) s.cluster.push_back(LaurentPoly::x(n, ny, i));
  return s;
}

Seed initial_seed(const ExchangeMatrix& b) { return initial_seed(frame(b)); }

std::pair<LaurentPoly, LaurentPoly> exchange_terms(const Seed& s, int k) {
  const IceQuiver& q = s.ice;
  const int n = q.mutable_count();
  const int ny = q.frozen_count();
  if (k < 0 || k >= n) throw UsageError("exchange_terms: vertex out of range");

  LaurentPoly::Exponents out_y(static_cast<std::size_t>(n + ny), 0);
  LaurentPoly::Exponents in_y(static_cast<std::size_t>(n + ny), 0);
  for (int f = n; f < q.row_count(); ++f) {
    const Entry c = q(f, k);
    // y_{f-n+1} sits at exponent slot nx + (f - n) == f.
    if (c > 0) out_y[f] = static_cast<std::int32_t>(c);
    if (c < 0) in_y[f] = static_cast<std::int32_t>(-c);
  }
  LaurentPoly out = LaurentPoly::monomial(n, ny, out_y);
  LaurentPoly in = LaurentPoly::monomial(n, ny, in_y);
  for (int j = 0; j < n; ++j) {
    const Entry e = q(k, j);
    if (e > 0) out = out * s.cluster[j].pow(static_cast<unsigned>(e));
    if (e < 0) in = in * s.cluster[j].pow(static_cast<unsigned>(-e));
  }
  return {std::move(out), std::move(in)};
}

Seed seed_mutate(const Seed& s, int k) {
  auto [out, in] = exchange_terms(s, k);
  auto quotient = divide_exact(out + in, s.cluster[k]);
  if (!quotient) {
    throw LaurentViolation("exchange at vertex " + std::to_string(k + 1) +
                           " does not divide exactly");
  }
  Seed next;
  next.cluster = s.cluster;
  next.cluster[k] = std::move(*quotient);
  next.ice = mutate(s.ice, k);
  return next;
}

LaurentPoly cluster_variable(const ExchangeMatrix& b, const MutationSequence& seq) {
  if (b.size() == 0) throw UsageError("cluster_variable: empty quiver");
  Seed s = initial_seed(b);
  for (int k : seq.steps()) s = seed_mutate(s, k);
  const int last = seq.empty() ? b.size() - 1 : seq.steps().back();
  LaurentPoly v = s.cluster[last];
  for (const auto& t : v.terms()) {
    if (t.coeff <= 0) {
      throw NegativeCoefficient("cluster variable has coefficient " + t.coeff.get_str());
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Coprimality

namespace {

__extension__ using Wide = __int128;

bool columns_independent(int rows, int cols, const std::function<Entry(int, int)>& at) {
  for (int a = 0; a < cols; ++a) {
    for (int c = a + 1; c < cols; ++c) {
      bool independent = false;
      for (int i = 0; i < rows && !independent; ++i) {
        for (int j = i + 1; j < rows && !independent; ++j) {
          const Wide minor = static_cast<Wide>(at(i, a)) * at(j, c) - static_cast<Wide>(at(j, a)) * at(i, c);
          independent = minor != 0;
        }
      }
      if (!independent) return false;
    }
  }
  return true;
}

}  // namespace

bool is_coprime_matrix(const ExchangeMatrix& b) {
  return columns_independent(b.size(), b.size(), [&b](int i, int j) { return b(i, j); });
}

bool is_coprime_matrix(const IceQuiver& q) {
  return columns_independent(q.row_count(), q.mutable_count(),
                             [&q](int i, int j) { return q(i, j); });
}

// ---------------------------------------------------------------------------
// Upper cluster algebra, depth 1

LaurentPoly initial_exchange_binomial(const ExchangeMatrix& b, int k) {
  const Seed s = initial_seed(b);
  auto [out, in] = exchange_terms(s, k);
  return out + in;
}

bool in_adjacent_laurent_ring(const LaurentPoly& p, const ExchangeMatrix& b, int k) {
  const int n = b.size();
  if (p.nx() != n || p.ny() != n) {
    throw UsageError("polynomial must be over x1..x" + std::to_string(n) + ", y1..y" +
                     std::to_string(n));
  }
  if (k < 0 || k >= n) throw UsageError("direction out of range");
  const LaurentPoly f = initial_exchange_binomial(b, k);
  for (const auto& [power, coeff] : p.split_by_variable(k)) {
    if (power >= 0) break;
    LaurentPoly rest = coeff;
    for (int m = 0; m < -power; ++m) {
      auto q = divide_exact(rest, f);
      if (!q) return false;
      rest = std::move(*q);
    }
  }
  return true;
}

std::vector<bool> adjacent_membership(const LaurentPoly& p, const ExchangeMatrix& b) {
  std::vector<bool> out;
  for (int k = 0; k < b.size(); ++k) out.push_back(in_adjacent_laurent_ring(p, b, k));
  return out;
}

bool depth1_upper_membership(const LaurentPoly& p, const ExchangeMatrix& b) {
  for (int k = 0; k < b.size(); ++k) {
    if (!in_adjacent_laurent_ring(p, b, k)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Gradings

bool grading_check(const ExchangeMatrix& b, const GradingVector& d) {
  if (static_cast<int>(d.degrees.size()) != b.size()) {
    throw UsageError("grading vector has " + std::to_string(d.degrees.size()) +
                     " entries, expected " + std::to_string(b.size()));
  }
  for (int k = 0; k < b.size(); ++k) {
    Entry sum = 0;
    for (int i = 0; i < b.size(); ++i) {
      sum = detail::checked_add(sum, detail::checked_mul(b(i, k), d.degrees[i]));
    }
    if (sum != 0) return false;
  }
  return true;
}

std::optional<Entry> degree(const LaurentPoly& p, const GradingVector& d) {
  if (static_cast<int>(d.degrees.size()) != p.nx()) {
    throw UsageError("grading vector length does not match the number of x variables");
  }
  std::optional<Entry> common;
  for (const auto& t : p.terms()) {
    Entry deg = 0;
    for (int i = 0; i < p.nx(); ++i) deg += static_cast<Entry>(t.exp[i]) * d.degrees[i];
    if (common && *common != deg) return std::nullopt;
    common = deg;
  }
  return common;
}

}  // namespace qmut
