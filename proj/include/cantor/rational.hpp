#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace cantor {

// Exact arithmetic carriers for every series sum in the library.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Integer ipow(const Integer& base, unsigned long exp);

// base^exp for possibly negative exp.
Rational rpow(const Rational& base, long exp);

// Accepts "num/den", plain integers and exact decimal strings ("0.125").
Rational parse_rational(std::string_view text);

// Canonical "num/den" rendering used by all emitters.
std::string format_rational(const Rational& r);

// Floats render at 15 significant digits everywhere.
std::string format_double(double x);

double to_double(const Rational& r);

Integer floor_div(const Integer& num, const Integer& den);

// floor(r) for any sign of r.
Integer rfloor(const Rational& r);

}  // namespace cantor
