#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrfbound {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single broken model invariant. `line` is the source line when the
/// model came from a file, 0 otherwise.
struct Violation {
  enum class Kind { kShape, kGraph, kPositivity, kDomain, kCount };
  Kind kind;
  std::string message;
  int line = 0;
};

class ModelError : public Error {
 public:
  explicit ModelError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Out-of-range vertex, state, or non-edge pair.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t budget);
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
};

class StateSpaceTooLarge : public Error {
 public:
  StateSpaceTooLarge(std::uint64_t required, std::uint64_t cap);
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

}  // namespace mrfbound
