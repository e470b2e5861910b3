#ifndef CSYMP_ERRORS_HPP
#define CSYMP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace csymp {

/// Base class for all library errors.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Two values over different free algebras were combined.
struct algebra_mismatch_error : error {
  using error::error;
};

/// An element had the wrong degree, or was not homogeneous where required.
struct degree_mismatch_error : error {
  using error::error;
};

/// A stated precondition of an operation does not hold.
struct precondition_error : error {
  using error::error;
};

/// Input does not have the shape a criterion requires.
struct shape_error : error {
  using error::error;
};

/// Text input could not be parsed; carries a 1-based line number when known.
struct parse_error : error {
  int line = 0;
  parse_error(const std::string& what, int line_no = 0)
      : error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what),
        line(line_no) {}
};

/// A computation would exceed the built-in desk-scale guardrails.
struct resource_error : error {
  using error::error;
};

}  // namespace csymp

#endif
