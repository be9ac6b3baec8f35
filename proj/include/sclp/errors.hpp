// SPDX-License-Identifier: Apache-2.0

#ifndef SCLP_ERRORS_HPP_
#define SCLP_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sclp {

/// Invalid user input: bad ids, inconsistent files, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file content; carries the 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A model has no feasible solution (e.g. an OD pair without any cut).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver assignment violates model constraints.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sclp

#endif  // SCLP_ERRORS_HPP_
