#pragma once

#include <stdexcept>
#include <string>

namespace chc {

/// Vector/matrix sizes that do not line up (e.g. inner product of unequal lengths).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A caller-supplied value violates an operation's precondition.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// An internal contract broke: non-unit norm, non-unitary gate, NaN score.
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

/// State does not carry the register layout an operation expects.
class LayoutError : public std::invalid_argument {
 public:
  explicit LayoutError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed input file. `line` is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace chc
