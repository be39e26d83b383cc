#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmut {

using Integer = mpz_class;
using Rational = mpq_class;

/// Sparse Laurent polynomial with integer coefficients in x_1..x_nx and
/// y_1..y_ny. Any integer exponent is representable; polynomials produced by
/// seed mutation keep y-exponents nonnegative.
class LaurentPoly {
 public:
  using Exponents = std::vector<std::int32_t>;  // x-exponents, then y-exponents
  struct Term {
    Exponents exp;
    Integer coeff;
  };

  LaurentPoly() = default;
  LaurentPoly(int nx, int ny) : nx_(nx), ny_(ny) {}

  static LaurentPoly constant(int nx, int ny, const Integer& c);
  static LaurentPoly monomial(int nx, int ny, Exponents exp, const Integer& c = 1);
  /// Variable x_{i+1} (0-based i).
  static LaurentPoly x(int nx, int ny, int i);
  /// Variable y_{i+1} (0-based i).
  static LaurentPoly y(int nx, int ny, int i);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nvars() const { return nx_ + ny_; }

  /// Terms in strictly decreasing lexicographic exponent order, no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly pow(unsigned e) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  /// Coefficients of the powers of one variable: result[j] has that variable's
  /// exponent removed and sums to *this after multiplying back by var^j.
  std::map<int, LaurentPoly> split_by_variable(int var) const;

  /// Smallest and largest exponent of each variable over all terms (zeros for the zero polynomial).
  Exponents min_exponents() const;
  Exponents max_exponents() const;

  Rational evaluate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) const;

  /// Human-readable form such as "x2*y1 + 1" over the denominator-free terms.
  std::string to_string() const;

  /// Builds from unsorted terms, combining duplicates and dropping zeros.
  static LaurentPoly from_terms(int nx, int ny, std::vector<Term> terms);

 private:
  void check_compatible(const LaurentPoly& other) const;

  int nx_ = 0;
  int ny_ = 0;
  std::vector<Term> terms_;
};

/// Quotient num / den when it is a Laurent polynomial, nullopt otherwise.
/// Throws UsageError on division by zero.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den);

/// Parses expressions over x1..x{nx}, y1..y{ny} with + - * / ^ and
/// parentheses, e.g. "(y2*y3*x2^2+x3^2+y2*x1)/(x1*x2)". Division must be
/// exact. Throws UsageError on malformed input.
LaurentPoly parse_laurent(std::string_view text, int nx, int ny);

}  // namespace qmut
