#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace twistlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "p/q" or a finite decimal such as "-0.25" into an exact rational.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" form ("p" when q = 1).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace twistlab
