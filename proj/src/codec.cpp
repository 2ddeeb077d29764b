#include "cantor/codec.hpp"

#include <algorithm>

#include "cantor/errors.hpp"

namespace cantor {

void validate(const CantorDigits& d) {
  validate(d.schedule);
  for (long k = 1; k <= d.length(); ++k) {
    int digit = d.digits[static_cast<size_t>(k - 1)];
    int qk = base_at(d.schedule, k);
    if (digit < 0 || digit > qk - 1)
      fail("InvalidDigit", "digit e_" + std::to_string(k) + " = " + std::to_string(digit) +
                               " outside {0,...," + std::to_string(qk - 1) + "}");
  }
}

void validate(const QaryDigits& d) {
  if (d.base < 2) fail("InvalidSchedule", "base q must be >= 2");
  for (size_t i = 0; i < d.digits.size(); ++i) {
    int digit = d.digits[i];
    if (digit < 0 || digit > d.base - 1)
      fail("InvalidDigit", "digit a_" + std::to_string(i + 1) + " = " + std::to_string(digit) +
                               " outside {0,...," + std::to_string(d.base - 1) + "}");
  }
}

void validate(const Cylinder& c) {
  if (c.base.empty()) fail("InvalidArgument", "cylinder rank must be >= 1");
  validate(CantorDigits{c.schedule, c.base, TailKind::Zero});
}

int digit_at(const CantorDigits& d, long k) {
  if (k < 1) fail("InvalidArgument", "digit index must be >= 1");
  if (k <= d.length()) return d.digits[static_cast<size_t>(k - 1)];
  return d.tail == TailKind::Zero ? 0 : base_at(d.schedule, k) - 1;
}

bool is_word_for_one(const CantorDigits& d) {
  return d.tail == TailKind::Max && d.digits.empty();
}

bool is_word_for_zero(const CantorDigits& d) {
  return d.tail == TailKind::Zero &&
         std::all_of(d.digits.begin(), d.digits.end(), [](int e) { return e == 0; });
}

Rational partial_sum(const CantorDigits& d, long n) {
  Rational sum(0);
  Integer prod(1);
  for (long k = 1; k <= n; ++k) {
    prod *= base_at(d.schedule, k);
    int digit = k <= d.length() ? d.digits[static_cast<size_t>(k - 1)] : 0;
    if (digit != 0) sum += Rational(digit, prod);
  }
  return sum;
}

Rational decode(const CantorDigits& d) {
  validate(d);
  Rational sum = partial_sum(d, d.length());
  if (d.tail == TailKind::Max) {
    // sum_{j>m} (q_j - 1)/(q_1...q_j) telescopes to 1/(q_1...q_m)
    sum += Rational(1, product_to(d.schedule, d.length()));
  }
  return sum;
}

Rational decode(const QaryDigits& d) { return decode(to_cantor(d)); }

CantorDigits to_cantor(const QaryDigits& d) {
  validate(d);
  return CantorDigits{BaseSchedule::constant(d.base), d.digits, d.tail};
}

EncodeResult encode(const Rational& x, const BaseSchedule& s, int max_digits) {
  validate(s);
  if (x < 0 || x > 1) fail("ValueOutOfRange", "encode expects x in [0,1]");
  if (max_digits < 1) fail("InvalidArgument", "max_digits must be >= 1");

  EncodeResult out;
  out.word.schedule = s;
  Rational rem = x;
  for (int k = 1; k <= max_digits && rem != 0; ++k) {
    int qk = base_at(s, k);
    Rational scaled = rem * qk;
    Integer digit = rfloor(scaled);
    if (digit == qk) --digit;  // only at rem == 1
    out.word.digits.push_back(digit.convert_to<int>());
    rem = scaled - Rational(digit);
  }
  out.exact = (rem == 0);
  out.residual = rem / Rational(product_to(s, out.word.length()));
  while (!out.word.digits.empty() && out.word.digits.back() == 0) out.word.digits.pop_back();
  return out;
}

CantorDigits canonicalize(const CantorDigits& d) {
  validate(d);
  CantorDigits out = d;
  if (out.tail == TailKind::Max && !out.digits.empty()) {
    // e_1..e_m with max tail equals e_1..e_{m-1}[e_m + 1] with zero tail;
    // carry when e_m + 1 overflows its base
    long m = out.length();
    while (m >= 1) {
      int qk = base_at(out.schedule, m);
      int bumped = out.digits[static_cast<size_t>(m - 1)] + 1;
      if (bumped <= qk - 1) {
        out.digits[static_cast<size_t>(m - 1)] = bumped;
        out.digits.resize(static_cast<size_t>(m));
        out.tail = TailKind::Zero;
        break;
      }
      --m;
    }
    if (m == 0) {
      // carried all the way out: the value is 1
      out.digits.clear();
      out.tail = TailKind::Max;
      return out;
    }
  }
  if (out.tail == TailKind::Zero)
    while (!out.digits.empty() && out.digits.back() == 0) out.digits.pop_back();
  return out;
}

CantorDigits complement(const CantorDigits& d) {
  validate(d);
  if (d.tail != TailKind::Zero)
    fail("NonCanonicalWord", "complement expects a zero-tail word");
  CantorDigits out{d.schedule, {}, TailKind::Max};
  out.digits.reserve(d.digits.size());
  for (long k = 1; k <= d.length(); ++k)
    out.digits.push_back(base_at(d.schedule, k) - 1 - d.digits[static_cast<size_t>(k - 1)]);
  return out;
}

CantorDigits shift(const CantorDigits& d, long n) {
  validate(d);
  if (n < 1) fail("InvalidArgument", "shift distance must be >= 1");
  CantorDigits out;
  out.schedule = shift_schedule(d.schedule, n);
  out.tail = d.tail;
  if (n < d.length())
    out.digits.assign(d.digits.begin() + n, d.digits.end());
  return out;
}

std::pair<Rational, Rational> cylinder_interval(const Cylinder& c) {
  validate(c);
  Rational inf = decode(CantorDigits{c.schedule, c.base, TailKind::Zero});
  Rational sup = inf + Rational(1, product_to(c.schedule, static_cast<long>(c.base.size())));
  return {inf, sup};
}

Rational decode_alternating(const CantorDigits& d) {
  validate(d);
  if (d.tail != TailKind::Zero)
    fail("NonCanonicalWord", "alternating decode expects a zero-tail word");
  Rational sum(0);
  Integer prod(1);
  int sign = 1;
  for (long n = 1; n <= d.length(); ++n) {
    prod *= base_at(d.schedule, n);
    sum += Rational(sign * (1 + d.digits[static_cast<size_t>(n - 1)]), prod);
    sign = -sign;
  }
  // zero digits beyond m still contribute +-1/(q_1...q_n)
  Rational tail = alternating_unit_sum(shift_schedule(d.schedule, d.length())) / Rational(prod);
  sum += (sign > 0) ? tail : -tail;
  return sum;
}

}  // namespace cantor
