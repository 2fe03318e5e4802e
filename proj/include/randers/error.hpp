#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace randers {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Expression syntax or semantic error, with the byte offset into the source
/// text and the set of tokens that would have been accepted there.
struct ParseError : Error {
  std::size_t offset = 0;
  std::vector<std::string> expected;
  std::string raw;  // message without the location/expected suffix

  ParseError(std::string msg, std::size_t off, std::vector<std::string> exp = {})
      : Error(format(msg, off, exp)),
        offset(off),
        expected(std::move(exp)),
        raw(std::move(msg)) {}

 private:
  static std::string format(const std::string& msg, std::size_t off,
                            const std::vector<std::string>& exp) {
    std::string s = msg + " (byte " + std::to_string(off) + ")";
    if (!exp.empty()) {
      s += "; expected ";
      for (std::size_t i = 0; i < exp.size(); ++i) {
        if (i) s += ", ";
        s += exp[i];
      }
    }
    return s;
  }
};

/// Evaluation hit a point outside an operation's domain
/// (sqrt/ln of a nonpositive value, division by zero, singular metric, ...).
struct DomainError : Error {
  using Error::Error;
};

/// A metric spec failed its load-time checks; carries the witness point.
struct ValidationError : Error {
  std::vector<double> witness;
  ValidationError(const std::string& what, std::vector<double> x = {})
      : Error(what), witness(std::move(x)) {}
};

/// Numerical failure inside an algorithm (lost positivity, drift, no convergence).
struct NumericError : Error {
  using Error::Error;
};

}  // namespace randers
