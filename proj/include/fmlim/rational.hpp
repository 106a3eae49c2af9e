#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fmlim {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Always "p/q", including integers ("1/1", "0/1").
std::string to_string(const Rational& q);

/// Accepts "p/q", "p" and (for convenience on the command line) decimal
/// literals such as "0.1", which are read exactly.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double.
Rational from_double(double x);

double to_double(const Rational& q);

Rational abs(const Rational& q);

}  // namespace fmlim
