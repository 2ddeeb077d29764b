#pragma once

#include <utility>
#include <vector>

#include "cantor/base_schedule.hpp"
#include "cantor/rational.hpp"

namespace cantor {

enum class TailKind { Zero, Max };

// Digit word e_1..e_m over a base schedule. TailKind::Zero reads the digits
// beyond m as 0; TailKind::Max reads them as q_j - 1. The empty Max word is
// the number 1. Canonical form is Zero-tailed (plus the word for 1).
struct CantorDigits {
  BaseSchedule schedule;
  std::vector<int> digits;
  TailKind tail = TailKind::Zero;

  long length() const { return static_cast<long>(digits.size()); }
};

// Digit word in a single base q; the constant-schedule special case.
struct QaryDigits {
  int base = 2;
  std::vector<int> digits;
  TailKind tail = TailKind::Zero;
};

// Cylinder of rank m: all numbers whose word starts with `base`.
struct Cylinder {
  BaseSchedule schedule;
  std::vector<int> base;
};

void validate(const CantorDigits& d);
void validate(const QaryDigits& d);
void validate(const Cylinder& c);

// Digit at position k (1-based) including the implied tail.
int digit_at(const CantorDigits& d, long k);

bool is_word_for_one(const CantorDigits& d);
bool is_word_for_zero(const CantorDigits& d);

// sum_{k<=n} e_k / (q_1 ... q_k).
Rational partial_sum(const CantorDigits& d, long n);

// Exact value in [0,1]; a Max tail is summed in closed form.
Rational decode(const CantorDigits& d);
Rational decode(const QaryDigits& d);

CantorDigits to_cantor(const QaryDigits& d);

struct EncodeResult {
  CantorDigits word;      // always Zero-tailed
  bool exact = false;     // remainder hit zero before max_digits
  Rational residual;      // x - decode(word), in [0, 1/product_to(m))
};

// Greedy digit extraction; the unique canonical representation.
EncodeResult encode(const Rational& x, const BaseSchedule& s, int max_digits);

// Rewrites Max-tail words to the equal Zero-tail word (carrying as needed)
// and strips trailing zeros. decode is preserved exactly.
CantorDigits canonicalize(const CantorDigits& d);

// Digit word of 1 - x: e_k -> q_k - 1 - e_k with a Max tail. Kept in this
// non-canonical form on purpose: the projection symmetry identity holds at
// the digit level only for this representative.
CantorDigits complement(const CantorDigits& d);

// Drops the first n digits; the result lives over shift_schedule(s, n).
CantorDigits shift(const CantorDigits& d, long n);

// (inf, sup) with sup - inf = 1/product_to(s, m).
std::pair<Rational, Rational> cylinder_interval(const Cylinder& c);

// Value of the word read as an alternating Cantor series
// sum (-1)^{n+1} (1 + e_n) / (q_1 ... q_n); the all-zero tail is summed in
// closed form. Zero-tail words only.
Rational decode_alternating(const CantorDigits& d);

}  // namespace cantor
