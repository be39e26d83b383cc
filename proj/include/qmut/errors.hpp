#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace qmut {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: index out of range, malformed document, empty vertex set.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (states, cycles, matrix size) or 64-bit entry range was exceeded.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what, std::optional<int> best_depth = std::nullopt)
      : Error(what), best_depth_(best_depth) {}

  /// Deepest fully explored search level when the cap was hit, if the error came from a search.
  std::optional<int> best_depth() const { return best_depth_; }

 private:
  std::optional<int> best_depth_;
};

/// A frozen column with both signs was observed; the input is outside mut(frame(Q)) or there is a bug.
class SignCoherenceViolation : public Error {
 public:
  using Error::Error;
};

/// An exchange step produced a non-Laurent quotient.
class LaurentViolation : public Error {
 public:
  using Error::Error;
};

/// A cluster variable expansion had a negative coefficient.
class NegativeCoefficient : public Error {
 public:
  using Error::Error;
};

}  // namespace qmut
