#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace qmut {

using Entry = std::int64_t;

// Vertex indices are 0-based throughout the C++ API. Text formats and the
// CLI use 1-based indices and convert at the boundary.

/// Skew-symmetric integer matrix of a quiver: b(i, j) > 0 means b(i, j) arrows i -> j.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;
  explicit ExchangeMatrix(int n);

  /// Validates squareness and skew-symmetry; throws UsageError otherwise.
  static ExchangeMatrix from_rows(const std::vector<std::vector<Entry>>& rows);
  static ExchangeMatrix from_rows(std::initializer_list<std::initializer_list<Entry>> rows);

  int size() const { return n_; }
  Entry operator()(int i, int j) const { return b_[static_cast<std::size_t>(i) * n_ + j]; }

  /// Sets b(i, j) = m and b(j, i) = -m.
  void set_arrows(int i, int j, Entry m);

  std::span<const Entry> row(int i) const {
    return {b_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }
  const std::vector<Entry>& data() const { return b_; }

  /// Largest |b(i, j)|; 0 for the empty matrix.
  Entry max_multiplicity() const;

  friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;
  friend auto operator<=>(const ExchangeMatrix& a, const ExchangeMatrix& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.b_ <=> b.b_;
  }

 private:
  int n_ = 0;
  std::vector<Entry> b_;
};

/// Ice quiver as an m x n matrix: rows [0, n) are the principal block, rows
/// [n, m) are frozen vertices.
///
/// Frozen rows are stored from the mutable side: entry (f, i) > 0 means that
/// many arrows i -> f, entry (f, i) < 0 means arrows f -> i. With this
/// convention the framed quiver has the identity as frozen block and the
/// frozen columns are the c-vectors. Arrows between frozen vertices are never
/// represented.
class IceQuiver {
 public:
  IceQuiver() = default;
  explicit IceQuiver(const ExchangeMatrix& principal,
                     const std::vector<std::vector<Entry>>& frozen_rows = {});

  int mutable_count() const { return n_; }
  int row_count() const { return m_; }
  int frozen_count() const { return m_ - n_; }

  Entry operator()(int r, int c) const { return b_[static_cast<std::size_t>(r) * n_ + c]; }
  Entry& at(int r, int c) { return b_[static_cast<std::size_t>(r) * n_ + c]; }
  std::span<const Entry> row(int r) const {
    return {b_.data() + static_cast<std::size_t>(r) * n_, static_cast<std::size_t>(n_)};
  }
  const std::vector<Entry>& data() const { return b_; }

  ExchangeMatrix principal() const;
  std::vector<std::vector<Entry>> frozen_rows() const;

  friend bool operator==(const IceQuiver&, const IceQuiver&) = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<Entry> b_;
};

enum class VertexStatus { Green, Red };

/// Matrix mutation at mutable vertex k. Throws UsageError for a bad index and
/// ResourceError if an entry leaves the 64-bit range.
ExchangeMatrix mutate(const ExchangeMatrix& b, int k);
IceQuiver mutate(const IceQuiver& q, int k);

/// Framed quiver: principal block b, frozen block the identity (arrows i -> i*).
IceQuiver frame(const ExchangeMatrix& b);

/// Green iff the frozen column of i is componentwise >= 0, red iff <= 0.
/// A column with both signs throws SignCoherenceViolation.
VertexStatus vertex_status(const IceQuiver& q, int i);
std::vector<VertexStatus> vertex_statuses(const IceQuiver& q);
bool all_red(const IceQuiver& q);

/// True when some vertex has two or more parallel arrows into i, frozen
/// vertices included.
bool is_head_of_multiple_arrow(const IceQuiver& q, int i);

/// Freezes the mutable vertices in `vertices`. Remaining mutable vertices keep
/// their relative order; newly frozen rows are appended after the existing
/// frozen rows in increasing vertex order.
IceQuiver freeze(const IceQuiver& q, const std::vector<int>& vertices);

bool is_acyclic(const ExchangeMatrix& b);
/// An ice quiver is acyclic when its mutable part is.
bool is_acyclic(const IceQuiver& q);

/// Principal minor on `vertices`, in the given order.
ExchangeMatrix induced_subquiver(const ExchangeMatrix& b, const std::vector<int>& vertices);

/// Vertex sets of the connected components of the underlying graph, each sorted,
/// ordered by smallest vertex.
std::vector<std::vector<int>> connected_components(const ExchangeMatrix& b);

/// Relabels so that vertex perm[p] of b becomes vertex p of the result.
ExchangeMatrix permute(const ExchangeMatrix& b, const std::vector<int>& perm);

struct ExchangeMatrixHash {
  std::size_t operator()(const ExchangeMatrix& b) const noexcept;
};
struct IceQuiverHash {
  std::size_t operator()(const IceQuiver& q) const noexcept;
};

namespace detail {
Entry checked_add(Entry a, Entry b);
Entry checked_mul(Entry a, Entry b);
/// The mutation increment (|a| * b + a * |b|) / 2 with overflow checks.
Entry mutation_term(Entry a, Entry b);
}  // namespace detail

}  // namespace qmut
