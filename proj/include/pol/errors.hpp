#pragma once

#include <stdexcept>
#include <string>

namespace pol {

/// Malformed or out-of-range input supplied by a caller (CLI exit code 2).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured work cap (recursion states, expert count, set size) was hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A labeled stream stopped being realizable by the concept class.
class Unrealizable : public std::runtime_error {
 public:
  Unrealizable(const std::string& what, std::size_t prefix_length)
      : std::runtime_error(what), prefix_length_(prefix_length) {}
  /// Length of the shortest unrealizable prefix.
  std::size_t prefix_length() const { return prefix_length_; }

 private:
  std::size_t prefix_length_;
};

/// An internal guarantee failed (a verified search did not terminate, a
/// duality gap was nonzero, ...). Indicates a bug, not bad input.
class DefectError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pol
