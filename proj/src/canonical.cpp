#include "qmut/canonical.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <utility>

#include "qmut/errors.hpp"

namespace qmut {

namespace {

// Iterated neighbourhood refinement. Colors are ranks of label-free
// signatures, so isomorphic matrices get matching ordered partitions.
std::vector<int> refined_colors(const ExchangeMatrix& b) {
  const int n = b.size();
  std::vector<std::vector<Entry>> sig(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    sig[v].assign(b.row(v).begin(), b.row(v).end());
    std::sort(sig[v].begin(), sig[v].end());
  }
  auto rank = [&](const std::vector<std::vector<Entry>>& s) {
    std::vector<std::vector<Entry>> uniq = s;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> out(s.size());
    for (std::size_t v = 0; v < s.size(); ++v) {
      out[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), s[v]) - uniq.begin());
    }
    return std::pair{out, static_cast<int>(uniq.size())};
  };
  auto [color, classes] = rank(sig);
  while (true) {
    std::vector<std::vector<Entry>> next(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<Entry, Entry>> nb;
      for (int u = 0; u < n; ++u) {
        if (u != v) nb.emplace_back(b(v, u), color[u]);
      }
      std::sort(nb.begin(), nb.end());
      next[v].push_back(color[v]);
      for (auto [e, c] : nb) {
        next[v].push_back(e);
        next[v].push_back(c);
      }
    }
    auto [c2, k2] = rank(next);
    if (k2 == classes) break;
    color = std::move(c2);
    classes = k2;
  }
  return color;
}

class Search {
 public:
  Search(const ExchangeMatrix& b, std::vector<int> color) : b_(b), color_(std::move(color)) {
    const int n = b.size();
    order_.resize(static_cast<std::size_t>(n));
    std::vector<int> sorted = color_;
    std::sort(sorted.begin(), sorted.end());
    slot_color_ = sorted;
    used_.assign(static_cast<std::size_t>(n), false);
    current_.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  }

  void run() { extend(0); }

  const std::vector<Entry>& best() const { return best_; }
  const std::vector<int>& best_order() const { return best_order_; }

 private:
  // u and w are interchangeable: swapping them fixes b.
  bool twins(int u, int w) const {
    if (b_(u, w) != 0) return false;
    for (int x = 0; x < b_.size(); ++x) {
      if (x != u && x != w && b_(u, x) != b_(w, x)) return false;
    }
    return true;
  }

  void extend(int pos) {
    const int n = b_.size();
    if (pos == n) {
      if (best_order_.empty() || current_ < best_) {
        best_ = current_;
        best_order_ = order_;
      }
      return;
    }
    std::vector<int> tried;
    for (int v = 0; v < n; ++v) {
      if (used_[v] || color_[v] != slot_color_[pos]) continue;
      bool redundant = false;
      for (int t : tried) {
        if (twins(t, v)) {
          redundant = true;
          break;
        }
      }
      if (redundant) continue;
      tried.push_back(v);

      const std::size_t mark = current_.size();
      for (int p = 0; p < pos; ++p) current_.push_back(b_(v, order_[p]));
      if (!best_order_.empty() &&
          std::lexicographical_compare(best_.begin(),
                                       best_.begin() + static_cast<std::ptrdiff_t>(current_.size()),
                                       current_.begin(), current_.end())) {
        current_.resize(mark);
        continue;
      }
      used_[v] = true;
      order_[pos] = v;
      extend(pos + 1);
      used_[v] = false;
      current_.resize(mark);
    }
  }

  const ExchangeMatrix& b_;
  std::vector<int> color_;
  std::vector<int> slot_color_;
  std::vector<bool> used_;
  std::vector<int> order_;
  std::vector<Entry> current_;
  std::vector<Entry> best_;
  std::vector<int> best_order_;
};

}  // namespace

CanonicalForm canonical_form(const ExchangeMatrix& b, int bound) {
  if (b.size() > bound) {
    throw ResourceError("canonical_form: " + std::to_string(b.size()) +
                        " vertices exceeds the bound " + std::to_string(bound));
  }
  if (b.size() == 0) return {b, {}};
  Search search(b, refined_colors(b));
  search.run();
  return {permute(b, search.best_order()), search.best_order()};
}

std::string canonical_hash(const ExchangeMatrix& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (word >> (8 * byte)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(canonical.size()));
  for (Entry e : canonical.data()) mix(static_cast<std::uint64_t>(e));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qmut
