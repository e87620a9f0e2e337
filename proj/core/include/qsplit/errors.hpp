// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsplit {

// Error in a .real benchmark file, carrying the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A circuit contains a gate with no .real encoding.
class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Oracle refused a query because the query budget is spent.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::uint64_t t)
      : std::runtime_error("oracle query budget exhausted at t = " +
                           std::to_string(t)),
        t_(t) {}
  std::uint64_t queries() const noexcept { return t_; }

 private:
  std::uint64_t t_;
};

// Oracle refused a query because the wall-clock limit expired.
class TimeLimitExceeded : public std::runtime_error {
 public:
  explicit TimeLimitExceeded(std::uint64_t t)
      : std::runtime_error("oracle time limit exceeded at t = " +
                           std::to_string(t)),
        t_(t) {}
  std::uint64_t queries() const noexcept { return t_; }

 private:
  std::uint64_t t_;
};

// Every bijection of a confirmed candidate set failed its check; the
// set-level match that produced the candidate was a false positive.
class AllPermutationsRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsplit
