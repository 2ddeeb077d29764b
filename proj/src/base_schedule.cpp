#include "cantor/base_schedule.hpp"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

#include "cantor/errors.hpp"

namespace cantor {

BaseSchedule BaseSchedule::constant(int q) {
  BaseSchedule s{{}, TailRule::Constant, {q}};
  validate(s);
  return s;
}

BaseSchedule BaseSchedule::constant(std::vector<int> prefix, int q) {
  BaseSchedule s{std::move(prefix), TailRule::Constant, {q}};
  validate(s);
  return s;
}

BaseSchedule BaseSchedule::periodic(std::vector<int> prefix, std::vector<int> segment) {
  BaseSchedule s{std::move(prefix), TailRule::Periodic, std::move(segment)};
  validate(s);
  return s;
}

void validate(const BaseSchedule& s) {
  if (s.tail.empty()) fail("InvalidSchedule", "tail rule needs at least one base");
  if (s.tail_rule == TailRule::Constant && s.tail.size() != 1)
    fail("InvalidSchedule", "constant tail carries exactly one base");
  for (int q : s.prefix)
    if (q < 2) fail("InvalidSchedule", "every base q_k must be >= 2");
  for (int q : s.tail)
    if (q < 2) fail("InvalidSchedule", "every base q_k must be >= 2");
}

int base_at(const BaseSchedule& s, long k) {
  if (k < 1) fail("InvalidArgument", "base index must be >= 1");
  auto prefix_len = static_cast<long>(s.prefix.size());
  if (k <= prefix_len) return s.prefix[static_cast<size_t>(k - 1)];
  long offset = k - prefix_len - 1;
  return s.tail[static_cast<size_t>(offset % static_cast<long>(s.tail.size()))];
}

Integer product_to(const BaseSchedule& s, long n) {
  if (n < 0) fail("InvalidArgument", "product length must be >= 0");
  Integer p(1);
  for (long k = 1; k <= n; ++k) p *= base_at(s, k);
  return p;
}

long pattern_prefix_length(const BaseSchedule& s) {
  return static_cast<long>(s.prefix.size());
}

BoundClass is_bounded_by(const BaseSchedule& s, int q, long horizon) {
  if (q < 2) fail("InvalidArgument", "bound base q must be >= 2");
  long scan = std::min<long>(horizon, pattern_prefix_length(s) +
                                          static_cast<long>(s.tail.size()));
  bool saw_equal = false;
  bool saw_less = false;
  for (long k = 1; k <= scan; ++k) {
    int qk = base_at(s, k);
    if (qk > q)
      fail("BaseAboveTarget", "schedule base q_" + std::to_string(k) + " = " +
                                  std::to_string(qk) + " exceeds q = " + std::to_string(q));
    (qk == q ? saw_equal : saw_less) = true;
  }
  if (saw_equal && saw_less) return BoundClass::Mixed;
  return saw_equal ? BoundClass::AllEqual : BoundClass::AllStrictlyLess;
}

BaseSchedule shift_schedule(const BaseSchedule& s, long n) {
  if (n < 0) fail("InvalidArgument", "shift distance must be >= 0");
  auto prefix_len = static_cast<long>(s.prefix.size());
  if (n <= prefix_len) {
    BaseSchedule out{{s.prefix.begin() + n, s.prefix.end()}, s.tail_rule, s.tail};
    return out;
  }
  if (s.tail_rule == TailRule::Constant) return BaseSchedule{{}, s.tail_rule, s.tail};
  // rotate the segment so position 1 lines up with q_{n+1}
  long p = static_cast<long>(s.tail.size());
  long rot = (n - prefix_len) % p;
  std::vector<int> segment(s.tail.begin() + rot, s.tail.end());
  segment.insert(segment.end(), s.tail.begin(), s.tail.begin() + rot);
  return BaseSchedule{{}, TailRule::Periodic, std::move(segment)};
}

Rational tail_digit_sum(const BaseSchedule& s, long n, int q) {
  if (n < 0) fail("InvalidArgument", "tail start must be >= 0");
  if (q < 2) fail("InvalidArgument", "target base q must be >= 2");
  long prefix_len = pattern_prefix_length(s);
  long aligned = std::max(n, prefix_len);

  Rational sum(0);
  for (long j = n + 1; j <= aligned; ++j)
    sum += Rational(base_at(s, j) - 1, ipow(Integer(q), static_cast<unsigned long>(j)));

  // beyond `aligned` the bases repeat with the tail period
  long p = static_cast<long>(s.tail.size());
  Integer qp = ipow(Integer(q), static_cast<unsigned long>(p));
  Rational period_scale(qp, qp - 1);  // sum_t q^{-tp}
  for (long r = 1; r <= p; ++r) {
    long idx = (aligned + r - prefix_len - 1) % p;
    int qj = s.tail[static_cast<size_t>(idx)];
    sum += Rational(qj - 1, ipow(Integer(q), static_cast<unsigned long>(aligned + r))) *
           period_scale;
  }
  return sum;
}

namespace {

// sum_{j>=1} (-1)^{j+1} / (t_1 ... t_j) for the pure repeating segment.
Rational alternating_segment_sum(const std::vector<int>& segment) {
  Rational head(0);
  Integer prod(1);
  int sign = 1;
  for (int t : segment) {
    prod *= t;
    head += Rational(sign, prod);
    sign = -sign;
  }
  long p = static_cast<long>(segment.size());
  // geometric factor 1 / (1 - (-1)^p / P)
  Integer denom = (p % 2 == 0) ? Integer(prod - 1) : Integer(prod + 1);
  return head * Rational(prod, denom);
}

}  // namespace

Rational alternating_unit_sum(const BaseSchedule& s) {
  Rational sum(0);
  Integer prod(1);
  int sign = 1;
  for (int q : s.prefix) {
    prod *= q;
    sum += Rational(sign, prod);
    sign = -sign;
  }
  Rational tail_part = alternating_segment_sum(s.tail) / Rational(prod);
  sum += (sign > 0) ? tail_part : -tail_part;
  return sum;
}

BaseSchedule schedule_from_json(const nlohmann::json& j) {
  BaseSchedule s;
  if (j.contains("prefix")) s.prefix = j.at("prefix").get<std::vector<int>>();
  const auto& tail = j.at("tail");
  auto kind = tail.at("kind").get<std::string>();
  if (kind == "constant") {
    s.tail_rule = TailRule::Constant;
    s.tail = {tail.at("value").get<int>()};
  } else if (kind == "periodic") {
    s.tail_rule = TailRule::Periodic;
    s.tail = tail.at("segment").get<std::vector<int>>();
  } else {
    fail("ParseError", "unknown tail kind '" + kind + "'");
  }
  validate(s);
  return s;
}

nlohmann::json schedule_to_json(const BaseSchedule& s) {
  nlohmann::json tail;
  if (s.tail_rule == TailRule::Constant) {
    tail = {{"kind", "constant"}, {"value", s.tail.front()}};
  } else {
    tail = {{"kind", "periodic"}, {"segment", s.tail}};
  }
  return {{"prefix", s.prefix}, {"tail", tail}};
}

}  // namespace cantor
