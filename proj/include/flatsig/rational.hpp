#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace flatsig {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Formats as "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

/// Parses "p/q", "p", or a finite decimal such as "-0.25".
Rational parse_rational(const std::string& s);

/// Reduces t into [0, 2).
Rational mod2(const Rational& t);

inline int sign(const Rational& r) { return r.sign(); }

}  // namespace flatsig
