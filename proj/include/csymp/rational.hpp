#ifndef CSYMP_RATIONAL_HPP
#define CSYMP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace csymp {

// All coefficients are exact rationals over arbitrary-precision integers.
// There is no floating point anywhere in the library.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Renders p/q, or just p when q == 1.
inline std::string format_rat(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

/// Parses "p" or "p/q" with optional leading sign; q must be nonzero.
inline Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator in '" + text + "'");
    return Rat(num, den);
  } catch (const std::runtime_error& e) {
    throw parse_error("bad rational '" + text + "'");
  }
}

}  // namespace csymp

#endif
