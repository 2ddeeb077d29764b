#include "cantor/rational.hpp"

#include <cctype>
#include <cstdio>

#include "cantor/errors.hpp"

namespace cantor {

Integer ipow(const Integer& base, unsigned long exp) {
  Integer result(1);
  Integer b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

Rational rpow(const Rational& base, long exp) {
  if (exp >= 0) {
    return Rational(ipow(numerator(base), static_cast<unsigned long>(exp)),
                    ipow(denominator(base), static_cast<unsigned long>(exp)));
  }
  if (base == 0) fail("DivisionByZero", "0 cannot be raised to a negative power");
  // the two-argument constructor insists on a positive denominator
  return Rational(ipow(denominator(base), static_cast<unsigned long>(-exp))) /
         Rational(ipow(numerator(base), static_cast<unsigned long>(-exp)));
}

namespace {

Integer parse_integer(std::string_view text) {
  if (text.empty()) fail("ParseError", "empty integer literal");
  return Integer(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) fail("ParseError", "empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) fail("ParseError", "zero denominator in rational literal");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !head.empty() && head.front() == '-';
    if (negative || (!head.empty() && head.front() == '+')) head.remove_prefix(1);
    Integer whole = head.empty() ? Integer(0) : parse_integer(head);
    Integer scale = ipow(Integer(10), frac.size());
    Integer digits = frac.empty() ? Integer(0) : parse_integer(frac);
    Rational value = Rational(whole) + Rational(digits, scale);
    return negative ? -value : value;
  }
  return Rational(parse_integer(text));
}

std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Integer floor_div(const Integer& num, const Integer& den) {
  Integer q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

Integer rfloor(const Rational& r) {
  return floor_div(numerator(r), denominator(r));
}

}  // namespace cantor
