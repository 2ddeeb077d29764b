#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cantor/rational.hpp"

namespace cantor {

enum class TailRule { Constant, Periodic };

// Base sequence Q = (q_k): an explicit finite prefix followed by either a
// constant value or an endlessly repeated segment. Restricting tails to
// these two shapes keeps every tail sum closed-form in exact arithmetic.
struct BaseSchedule {
  std::vector<int> prefix;
  TailRule tail_rule = TailRule::Constant;
  std::vector<int> tail;  // one entry for Constant, the segment for Periodic

  static BaseSchedule constant(int q);
  static BaseSchedule constant(std::vector<int> prefix, int q);
  static BaseSchedule periodic(std::vector<int> prefix, std::vector<int> segment);

  bool operator==(const BaseSchedule&) const = default;
};

// Throws InvalidSchedule unless every base is >= 2 and the tail is non-empty.
void validate(const BaseSchedule& s);

// q_k, 1-based.
int base_at(const BaseSchedule& s, long k);

// q_1 q_2 ... q_n; 1 for n = 0.
Integer product_to(const BaseSchedule& s, long n);

enum class BoundClass { AllEqual, AllStrictlyLess, Mixed };

// Classifies the whole sequence against q: q_n = q everywhere, q_n < q
// everywhere, or both. Exact for these tail shapes once the scan covers the
// prefix plus one tail period; `horizon` caps the scan. Throws on q_n > q.
BoundClass is_bounded_by(const BaseSchedule& s, int q, long horizon = 1 << 20);

// The schedule k -> q_{n+k} seen by the shifted expansion.
BaseSchedule shift_schedule(const BaseSchedule& s, long n);

// Positions up to which the sequence can differ from its periodic pattern.
long pattern_prefix_length(const BaseSchedule& s);

// sum_{j>n} (q_j - 1) / q^j, exactly (geometric closed form on the tail).
Rational tail_digit_sum(const BaseSchedule& s, long n, int q);

// sum_{j>=1} (-1)^{j+1} / (q_1 ... q_j), exactly.
Rational alternating_unit_sum(const BaseSchedule& s);

// JSON descriptor:
//   {"prefix":[...], "tail":{"kind":"constant","value":c}}
//   {"prefix":[...], "tail":{"kind":"periodic","segment":[...]}}
BaseSchedule schedule_from_json(const nlohmann::json& j);
nlohmann::json schedule_to_json(const BaseSchedule& s);

}  // namespace cantor
