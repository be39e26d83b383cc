#include "qmut/laurent_poly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>

#include "qmut/errors.hpp"

namespace qmut {

namespace {

struct ExpHash {
  std::size_t operator()(const LaurentPoly::Exponents& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto v : e) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

// Decreasing lexicographic order.
bool exp_greater(const LaurentPoly::Exponents& a, const LaurentPoly::Exponents& b) { return b < a; }

LaurentPoly::Exponents add_exp(const LaurentPoly::Exponents& a, const LaurentPoly::Exponents& b) {
  LaurentPoly::Exponents r(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) r[v] = a[v] + b[v];
  return r;
}

LaurentPoly::Exponents sub_exp(const LaurentPoly::Exponents& a, const LaurentPoly::Exponents& b) {
  LaurentPoly::Exponents r(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) r[v] = a[v] - b[v];
  return r;
}

}  // namespace

LaurentPoly LaurentPoly::constant(int nx, int ny, const Integer& c) {
  return monomial(nx, ny, Exponents(static_cast<std::size_t>(nx + ny), 0), c);
}

LaurentPoly LaurentPoly::monomial(int nx, int ny, Exponents exp, const Integer& c) {
  if (static_cast<int>(exp.size()) != nx + ny) throw UsageError("monomial: exponent length mismatch");
  LaurentPoly p(nx, ny);
  if (c != 0) p.terms_.push_back({std::move(exp), c});
  return p;
}

LaurentPoly LaurentPoly::x(int nx, int ny, int i) {
  if (i < 0 || i >= nx) throw UsageError("x index out of range");
  Exponents e(static_cast<std::size_t>(nx + ny), 0);
  e[i] = 1;
  return monomial(nx, ny, std::move(e));
}

LaurentPoly LaurentPoly::y(int nx, int ny, int i) {
  if (i < 0 || i >= ny) throw UsageError("y index out of range");
  Exponents e(static_cast<std::size_t>(nx + ny), 0);
  e[nx + i] = 1;
  return monomial(nx, ny, std::move(e));
}

LaurentPoly LaurentPoly::from_terms(int nx, int ny, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return exp_greater(a.exp, b.exp); });
  LaurentPoly p(nx, ny);
  for (auto& t : terms) {
    if (static_cast<int>(t.exp.size()) != nx + ny) throw UsageError("term: exponent length mismatch");
    if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

void LaurentPoly::check_compatible(const LaurentPoly& other) const {
  if (nx_ != other.nx_ || ny_ != other.ny_) {
    throw UsageError("Laurent polynomials over different variable sets");
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_compatible(b);
  LaurentPoly r(a.nx_, a.ny_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && exp_greater(a.terms_[i].exp, b.terms_[j].exp))) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || exp_greater(b.terms_[j].exp, a.terms_[i].exp)) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      Integer c = a.terms_[i].coeff + b.terms_[j].coeff;
      if (c != 0) r.terms_.push_back({a.terms_[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

namespace {

// Exponent vectors packed into one word, first variable in the high bits, so
// that numeric order on keys is lexicographic order on exponents.
struct Packing {
  LaurentPoly::Exponents lo;
  std::vector<int> shift;
};

std::optional<Packing> packing_for(const LaurentPoly::Exponents& lo, const LaurentPoly::Exponents& hi) {
  Packing p;
  p.lo = lo;
  p.shift.assign(lo.size(), 0);
  int used = 0;
  for (std::size_t v = lo.size(); v-- > 0;) {
    const std::uint64_t range = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi[v]) - lo[v]);
    int bits = 0;
    while (bits < 64 && (range >> bits) != 0) ++bits;
    p.shift[v] = used;
    used += bits;
    if (used > 63) return std::nullopt;
  }
  return p;
}

std::uint64_t pack(const Packing& p, const LaurentPoly::Exponents& e, const LaurentPoly::Exponents& base) {
  std::uint64_t key = 0;
  for (std::size_t v = 0; v < e.size(); ++v) {
    key |= static_cast<std::uint64_t>(e[v] - base[v]) << p.shift[v];
  }
  return key;
}

}  // namespace

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return LaurentPoly(a.nx_, a.ny_);
  const LaurentPoly& small = a.terms_.size() <= b.terms_.size() ? a : b;
  const LaurentPoly& large = &small == &a ? b : a;

  const auto smin = small.min_exponents();
  const auto lmin = large.min_exponents();
  const auto smax = small.max_exponents();
  const auto lmax = large.max_exponents();
  const auto packing = packing_for(add_exp(smin, lmin), add_exp(smax, lmax));

  if (!packing) {
    std::unordered_map<LaurentPoly::Exponents, Integer, ExpHash> acc;
    for (const auto& s : small.terms_) {
      for (const auto& t : large.terms_) mpz_addmul(acc[add_exp(s.exp, t.exp)].get_mpz_t(), s.coeff.get_mpz_t(), t.coeff.get_mpz_t());
    }
    std::vector<LaurentPoly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [e, c] : acc) {
      if (c != 0) terms.push_back({e, std::move(c)});
    }
    return LaurentPoly::from_terms(a.nx_, a.ny_, std::move(terms));
  }

  // Heap merge of the rows small[i] * large, each already sorted.
  std::vector<std::uint64_t> skey;
  std::vector<std::uint64_t> lkey;
  for (const auto& t : small.terms_) skey.push_back(pack(*packing, t.exp, smin));
  for (const auto& t : large.terms_) lkey.push_back(pack(*packing, t.exp, lmin));
  std::vector<std::size_t> col(small.terms_.size(), 0);
  using HeapItem = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<HeapItem> heap;
  for (std::size_t i = 0; i < skey.size(); ++i) heap.emplace(skey[i] + lkey[0], i);

  LaurentPoly r(a.nx_, a.ny_);
  Integer acc;
  while (!heap.empty()) {
    const std::uint64_t key = heap.top().first;
    acc = 0;
    while (!heap.empty() && heap.top().first == key) {
      const std::size_t i = heap.top().second;
      heap.pop();
      const std::size_t j = col[i]++;
      mpz_addmul(acc.get_mpz_t(), small.terms_[i].coeff.get_mpz_t(), large.terms_[j].coeff.get_mpz_t());
      if (j + 1 < lkey.size()) heap.emplace(skey[i] + lkey[j + 1], i);
    }
    if (acc == 0) continue;
    LaurentPoly::Exponents e(packing->lo.size());
    for (std::size_t v = 0; v < e.size(); ++v) {
      const int next = v == 0 ? 64 : packing->shift[v - 1];
      const std::uint64_t mask = next - packing->shift[v] >= 64 ? ~0ULL : ((1ULL << (next - packing->shift[v])) - 1);
      e[v] = static_cast<std::int32_t>((key >> packing->shift[v]) & mask) + packing->lo[v];
    }
    r.terms_.push_back({std::move(e), acc});
  }
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  LaurentPoly result = constant(nx_, ny_, 1);
  LaurentPoly base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nx_ != b.nx_ || a.ny_ != b.ny_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t t = 0; t < a.terms_.size(); ++t) {
    if (a.terms_[t].exp != b.terms_[t].exp || a.terms_[t].coeff != b.terms_[t].coeff) return false;
  }
  return true;
}

std::map<int, LaurentPoly> LaurentPoly::split_by_variable(int var) const {
  if (var < 0 || var >= nvars()) throw UsageError("split_by_variable: bad variable");
  std::map<int, std::vector<Term>> buckets;
  for (const auto& t : terms_) {
    Term u = t;
    u.exp[var] = 0;
    buckets[t.exp[var]].push_back(std::move(u));
  }
  std::map<int, LaurentPoly> out;
  for (auto& [p, ts] : buckets) out.emplace(p, from_terms(nx_, ny_, std::move(ts)));
  return out;
}

LaurentPoly::Exponents LaurentPoly::min_exponents() const {
  Exponents r(static_cast<std::size_t>(nvars()), 0);
  if (terms_.empty()) return r;
  r = terms_.front().exp;
  for (const auto& t : terms_) {
    for (std::size_t v = 0; v < r.size(); ++v) r[v] = std::min(r[v], t.exp[v]);
  }
  return r;
}

LaurentPoly::Exponents LaurentPoly::max_exponents() const {
  Exponents r(static_cast<std::size_t>(nvars()), 0);
  if (terms_.empty()) return r;
  r = terms_.front().exp;
  for (const auto& t : terms_) {
    for (std::size_t v = 0; v < r.size(); ++v) r[v] = std::max(r[v], t.exp[v]);
  }
  return r;
}

Rational LaurentPoly::evaluate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) const {
  if (static_cast<int>(xs.size()) != nx_ || static_cast<int>(ys.size()) != ny_) {
    throw UsageError("evaluate: point has wrong dimension");
  }
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational term = t.coeff;
    for (int v = 0; v < nvars(); ++v) {
      const Rational& base = v < nx_ ? xs[v] : ys[v - nx_];
      const int e = t.exp[v];
      if (e == 0) continue;
      if (base == 0) throw UsageError("evaluate: zero base with nonzero exponent");
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(std::abs(e)));
      mpz_pow_ui(p.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(std::abs(e)));
      p.canonicalize();
      if (e > 0) term *= p; else term /= p;
    }
    sum += term;
  }
  return sum;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& term = terms_[t];
    Integer c = term.coeff;
    if (t == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs(c);
    std::string mono;
    for (int v = 0; v < nvars(); ++v) {
      const int e = term.exp[v];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (v < nx_ ? "x" + std::to_string(v + 1) : "y" + std::to_string(v - nx_ + 1));
      if (e != 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.get_str() + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact division

std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
  if (num.nx() != den.nx() || num.ny() != den.ny()) {
    throw UsageError("divide_exact: different variable sets");
  }
  if (den.is_zero()) throw UsageError("division by zero");
  const int nx = num.nx();
  const int ny = num.ny();
  if (num.is_zero()) return LaurentPoly(nx, ny);

  if (den.is_monomial()) {
    const auto& d = den.terms().front();
    std::vector<LaurentPoly::Term> q;
    q.reserve(num.terms().size());
    for (const auto& t : num.terms()) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.coeff.get_mpz_t())) return std::nullopt;
      Integer c = t.coeff;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.coeff.get_mpz_t());
      q.push_back({sub_exp(t.exp, d.exp), std::move(c)});
    }
    return LaurentPoly::from_terms(nx, ny, std::move(q));
  }

  // Per-variable degree box any exact quotient must fit in; it keeps the
  // strictly decreasing leading-term sequence finite when the division is not exact.
  const auto nmin = num.min_exponents();
  const auto nmax = num.max_exponents();
  const auto dmin = den.min_exponents();
  const auto dmax = den.max_exponents();
  LaurentPoly::Exponents lo(nmin.size());
  LaurentPoly::Exponents hi(nmin.size());
  for (std::size_t v = 0; v < nmin.size(); ++v) {
    lo[v] = nmin[v] - dmin[v];
    hi[v] = nmax[v] - dmax[v];
    if (lo[v] > hi[v]) return std::nullopt;
  }

  std::map<LaurentPoly::Exponents, Integer, std::greater<>> rem;
  for (const auto& t : num.terms()) rem.emplace(t.exp, t.coeff);
  const auto& lead = den.terms().front();

  std::vector<LaurentPoly::Term> quotient;
  Integer c;
  Integer prod;
  while (!rem.empty()) {
    auto top = rem.begin();
    LaurentPoly::Exponents e = sub_exp(top->first, lead.exp);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] < lo[v] || e[v] > hi[v]) return std::nullopt;
    }
    if (!mpz_divisible_p(top->second.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
    c = top->second;
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), lead.coeff.get_mpz_t());
    rem.erase(top);
    for (std::size_t t = 1; t < den.terms().size(); ++t) {
      const auto& d = den.terms()[t];
      prod = c * d.coeff;
      auto [it, inserted] = rem.try_emplace(add_exp(e, d.exp));
      it->second -= prod;
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back({std::move(e), c});
  }
  return LaurentPoly::from_terms(nx, ny, std::move(quotient));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, int nx, int ny) : s_(text), nx_(nx), ny_(ny) {}

  LaurentPoly parse() {
    LaurentPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }

  LaurentPoly expr() {
    LaurentPoly acc = term();
    while (true) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  LaurentPoly term() {
    LaurentPoly acc = unary();
    while (true) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        LaurentPoly d = unary();
        if (d.is_zero()) fail("division by zero");
        auto q = divide_exact(acc, d);
        if (!q) fail("division is not exact");
        acc = std::move(*q);
      } else {
        return acc;
      }
    }
  }

  LaurentPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  LaurentPoly power() {
    LaurentPoly base = primary();
    if (!eat('^')) return base;
    bool neg = false;
    if (eat('-')) neg = true;
    const std::string d = digits();
    if (d.size() > 6) fail("exponent too large");
    const unsigned e = static_cast<unsigned>(std::stoul(d));
    LaurentPoly p = base.pow(e);
    if (!neg) return p;
    auto inv = divide_exact(LaurentPoly::constant(nx_, ny_, 1), p);
    if (!inv) fail("negative power of a non-monomial");
    return *inv;
  }

  LaurentPoly primary() {
    if (eat('(')) {
      LaurentPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == 'x' || c == 'y') {
      ++pos_;
      const int idx = std::stoi(digits()) - 1;
      const int limit = c == 'x' ? nx_ : ny_;
      if (idx < 0 || idx >= limit) fail(std::string(1, c) + " index out of range");
      return c == 'x' ? LaurentPoly::x(nx_, ny_, idx) : LaurentPoly::y(nx_, ny_, idx);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return LaurentPoly::constant(nx_, ny_, Integer(digits()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int nx_;
  int ny_;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, int nx, int ny) { return Parser(text, nx, ny).parse(); }

}  // namespace qmut
