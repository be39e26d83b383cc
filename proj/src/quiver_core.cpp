#include "qmut/quiver_core.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "qmut/errors.hpp"

namespace qmut {

namespace detail {

Entry checked_add(Entry a, Entry b) {
  Entry r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("matrix entry overflow in mutation");
  return r;
}

Entry checked_mul(Entry a, Entry b) {
  Entry r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("matrix entry overflow in mutation");
  return r;
}

Entry mutation_term(Entry a, Entry b) {
  if (a > 0 && b > 0) return checked_mul(a, b);
  if (a < 0 && b < 0) return -checked_mul(a, b);
  return 0;
}

}  // namespace detail

namespace {

void require_vertex(int k, int n, const char* what) {
  if (k < 0 || k >= n) {
    throw UsageError(std::string(what) + ": vertex " + std::to_string(k + 1) +
                     " out of range 1.." + std::to_string(n));
  }
}

std::size_t hash_entries(std::size_t seed, const std::vector<Entry>& v) {
  std::size_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (Entry e : v) {
    h ^= std::hash<Entry>{}(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// ExchangeMatrix

ExchangeMatrix::ExchangeMatrix(int n) : n_(n), b_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 0) throw UsageError("negative vertex count");
}

ExchangeMatrix ExchangeMatrix::from_rows(const std::vector<std::vector<Entry>>& rows) {
  const int n = static_cast<int>(rows.size());
  ExchangeMatrix b(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw UsageError("exchange matrix row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    }
    std::copy(rows[i].begin(), rows[i].end(), b.b_.begin() + static_cast<std::ptrdiff_t>(i) * n);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (b(i, j) != -b(j, i)) {
        throw UsageError("exchange matrix is not skew-symmetric at (" + std::to_string(i + 1) +
                         ", " + std::to_string(j + 1) + ")");
      }
    }
  }
  return b;
}

ExchangeMatrix ExchangeMatrix::from_rows(std::initializer_list<std::initializer_list<Entry>> rows) {
  std::vector<std::vector<Entry>> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

void ExchangeMatrix::set_arrows(int i, int j, Entry m) {
  require_vertex(i, n_, "set_arrows");
  require_vertex(j, n_, "set_arrows");
  if (i == j) {
    if (m != 0) throw UsageError("loops are not allowed");
    return;
  }
  b_[static_cast<std::size_t>(i) * n_ + j] = m;
  b_[static_cast<std::size_t>(j) * n_ + i] = -m;
}

Entry ExchangeMatrix::max_multiplicity() const {
  Entry best = 0;
  for (Entry e : b_) best = std::max(best, e < 0 ? -e : e);
  return best;
}

std::size_t ExchangeMatrixHash::operator()(const ExchangeMatrix& b) const noexcept {
  return hash_entries(static_cast<std::size_t>(b.size()), b.data());
}

// ---------------------------------------------------------------------------
// IceQuiver

IceQuiver::IceQuiver(const ExchangeMatrix& principal,
                     const std::vector<std::vector<Entry>>& frozen_rows)
    : n_(principal.size()), m_(principal.size() + static_cast<int>(frozen_rows.size())) {
  b_ = principal.data();
  b_.reserve(static_cast<std::size_t>(m_) * n_);
  for (std::size_t f = 0; f < frozen_rows.size(); ++f) {
    if (static_cast<int>(frozen_rows[f].size()) != n_) {
      throw UsageError("frozen row " + std::to_string(f + 1) + " has " +
                       std::to_string(frozen_rows[f].size()) + " entries, expected " +
                       std::to_string(n_));
    }
    b_.insert(b_.end(), frozen_rows[f].begin(), frozen_rows[f].end());
  }
}

ExchangeMatrix IceQuiver::principal() const {
  ExchangeMatrix b(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) b.set_arrows(i, j, (*this)(i, j));
  }
  return b;
}

std::vector<std::vector<Entry>> IceQuiver::frozen_rows() const {
  std::vector<std::vector<Entry>> rows;
  for (int r = n_; r < m_; ++r) rows.emplace_back(row(r).begin(), row(r).end());
  return rows;
}

std::size_t IceQuiverHash::operator()(const IceQuiver& q) const noexcept {
  return hash_entries(static_cast<std::size_t>(q.mutable_count()) * 131 +
                          static_cast<std::size_t>(q.row_count()),
                      q.data());
}

// ---------------------------------------------------------------------------
// Mutation

ExchangeMatrix mutate(const ExchangeMatrix& b, int k) {
  const int n = b.size();
  require_vertex(k, n, "mutate");
  ExchangeMatrix out = b;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Entry v;
      if (i == k || j == k) {
        v = -b(i, j);
      } else {
        v = detail::checked_add(b(i, j), detail::mutation_term(b(i, k), b(k, j)));
      }
      out.set_arrows(i, j, v);
    }
  }
  return out;
}

IceQuiver mutate(const IceQuiver& q, int k) {
  const int n = q.mutable_count();
  require_vertex(k, n, "mutate");
  IceQuiver out = q;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) {
        out.at(i, j) = -q(i, j);
      } else {
        out.at(i, j) = detail::checked_add(q(i, j), detail::mutation_term(q(i, k), q(k, j)));
      }
    }
  }
  // Frozen rows carry the opposite sign of the unified skew-symmetric
  // convention, so the 2-path term is taken on the negated entry.
  for (int f = n; f < q.row_count(); ++f) {
    for (int j = 0; j < n; ++j) {
      if (j == k) {
        out.at(f, j) = -q(f, j);
      } else {
        out.at(f, j) = detail::checked_add(q(f, j), -detail::mutation_term(-q(f, k), q(k, j)));
      }
    }
  }
  return out;
}

IceQuiver frame(const ExchangeMatrix& b) {
  const int n = b.size();
  std::vector<std::vector<Entry>> identity(static_cast<std::size_t>(n), std::vector<Entry>(n, 0));
  for (int i = 0; i < n; ++i) identity[i][i] = 1;
  return IceQuiver(b, identity);
}

// ---------------------------------------------------------------------------
// Colors

VertexStatus vertex_status(const IceQuiver& q, int i) {
  require_vertex(i, q.mutable_count(), "vertex_status");
  bool has_pos = false;
  bool has_neg = false;
  for (int f = q.mutable_count(); f < q.row_count(); ++f) {
    has_pos |= q(f, i) > 0;
    has_neg |= q(f, i) < 0;
  }
  if (has_pos && has_neg) {
    throw SignCoherenceViolation("frozen column of vertex " + std::to_string(i + 1) +
                                 " has mixed signs");
  }
  return has_neg ? VertexStatus::Red : VertexStatus::Green;
}

std::vector<VertexStatus> vertex_statuses(const IceQuiver& q) {
  std::vector<VertexStatus> out;
  out.reserve(static_cast<std::size_t>(q.mutable_count()));
  for (int i = 0; i < q.mutable_count(); ++i) out.push_back(vertex_status(q, i));
  return out;
}

bool all_red(const IceQuiver& q) {
  for (int i = 0; i < q.mutable_count(); ++i) {
    if (vertex_status(q, i) != VertexStatus::Red) return false;
  }
  return true;
}

bool is_head_of_multiple_arrow(const IceQuiver& q, int i) {
  require_vertex(i, q.mutable_count(), "is_head_of_multiple_arrow");
  for (int r = 0; r < q.mutable_count(); ++r) {
    if (q(r, i) >= 2) return true;
  }
  for (int f = q.mutable_count(); f < q.row_count(); ++f) {
    if (q(f, i) <= -2) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Structure

IceQuiver freeze(const IceQuiver& q, const std::vector<int>& vertices) {
  const int n = q.mutable_count();
  if (vertices.empty()) throw UsageError("freeze: empty vertex set");
  std::vector<bool> frozen(static_cast<std::size_t>(n), false);
  for (int v : vertices) {
    require_vertex(v, n, "freeze");
    if (frozen[v]) throw UsageError("freeze: vertex " + std::to_string(v + 1) + " listed twice");
    frozen[v] = true;
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) {
    if (!frozen[i]) keep.push_back(i);
  }

  ExchangeMatrix principal(static_cast<int>(keep.size()));
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t c = a + 1; c < keep.size(); ++c) {
      principal.set_arrows(static_cast<int>(a), static_cast<int>(c), q(keep[a], keep[c]));
    }
  }
  std::vector<std::vector<Entry>> rows;
  for (int f = n; f < q.row_count(); ++f) {
    std::vector<Entry> r;
    for (int c : keep) r.push_back(q(f, c));
    rows.push_back(std::move(r));
  }
  for (int v = 0; v < n; ++v) {
    if (!frozen[v]) continue;
    std::vector<Entry> r;
    for (int c : keep) r.push_back(-q(v, c));
    rows.push_back(std::move(r));
  }
  return IceQuiver(principal, rows);
}

bool is_acyclic(const ExchangeMatrix& b) {
  const int n = b.size();
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (b(i, j) > 0) ++indeg[j];
    }
  }
  std::queue<int> ready;
  for (int i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.push(i);
  }
  int seen = 0;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop();
    ++seen;
    for (int j = 0; j < n; ++j) {
      if (b(v, j) > 0 && --indeg[j] == 0) ready.push(j);
    }
  }
  return seen == n;
}

bool is_acyclic(const IceQuiver& q) { return is_acyclic(q.principal()); }

ExchangeMatrix induced_subquiver(const ExchangeMatrix& b, const std::vector<int>& vertices) {
  if (vertices.empty()) throw UsageError("induced_subquiver: empty vertex set");
  std::vector<bool> used(static_cast<std::size_t>(b.size()), false);
  for (int v : vertices) {
    require_vertex(v, b.size(), "induced_subquiver");
    if (used[v]) {
      throw UsageError("induced_subquiver: vertex " + std::to_string(v + 1) + " listed twice");
    }
    used[v] = true;
  }
  const int k = static_cast<int>(vertices.size());
  ExchangeMatrix out(k);
  for (int a = 0; a < k; ++a) {
    for (int c = a + 1; c < k; ++c) out.set_arrows(a, c, b(vertices[a], vertices[c]));
  }
  return out;
}

std::vector<std::vector<int>> connected_components(const ExchangeMatrix& b) {
  const int n = b.size();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int u = 0; u < n; ++u) {
        if (b(v, u) != 0 && comp[u] < 0) {
          comp[u] = id;
          stack.push_back(u);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

ExchangeMatrix permute(const ExchangeMatrix& b, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != b.size()) throw UsageError("permute: size mismatch");
  if (perm.empty()) return b;
  return induced_subquiver(b, perm);
}

}  // namespace qmut
