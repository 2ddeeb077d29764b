#include <doctest.h>

#include <nlohmann/json.hpp>

#include "cantor/base_schedule.hpp"
#include "cantor/errors.hpp"
#include "oracles.hpp"

using namespace cantor;

TEST_CASE("base_at follows prefix then tail") {
  BaseSchedule s = BaseSchedule::constant({2, 3}, 4);
  CHECK(base_at(s, 2) == 3);
  CHECK(base_at(s, 7) == 4);

  BaseSchedule p = BaseSchedule::periodic({}, {2, 3});
  CHECK(base_at(p, 4) == 3);
  CHECK(base_at(p, 1) == 2);
  CHECK(base_at(p, 5) == 2);
}

TEST_CASE("product_to") {
  CHECK(product_to(BaseSchedule::constant(2), 3) == 8);
  CHECK(product_to(BaseSchedule::constant({2, 3, 4}, 4), 3) == 24);
  CHECK(product_to(BaseSchedule::periodic({5}, {3, 2}), 0) == 1);
}

TEST_CASE("product recurrence and periodicity") {
  for (const BaseSchedule& s :
       {BaseSchedule::constant(2), BaseSchedule::constant({2, 3, 4}, 4),
        BaseSchedule::periodic({5}, {3, 2})}) {
    for (long n = 0; n < 20; ++n)
      CHECK(product_to(s, n + 1) == product_to(s, n) * base_at(s, n + 1));
  }
  BaseSchedule p = BaseSchedule::periodic({7, 5}, {2, 3, 4});
  long L = static_cast<long>(p.prefix.size());
  for (long k = 1; k <= 12; ++k) CHECK(base_at(p, L + k) == base_at(p, L + k + 3));
}

TEST_CASE("is_bounded_by trichotomy") {
  CHECK(is_bounded_by(BaseSchedule::constant(3), 3) == BoundClass::AllEqual);
  CHECK(is_bounded_by(BaseSchedule::constant(2), 3) == BoundClass::AllStrictlyLess);
  CHECK(is_bounded_by(BaseSchedule::constant({3, 3}, 2), 3) == BoundClass::Mixed);
  CHECK_THROWS_AS(is_bounded_by(BaseSchedule::constant(4), 3), DomainError);
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(BaseSchedule::constant(1), DomainError);
  CHECK_THROWS_AS(BaseSchedule::periodic({}, {}), DomainError);
  CHECK_THROWS_AS(BaseSchedule::constant({2, 1}, 3), DomainError);
}

TEST_CASE("shift_schedule") {
  BaseSchedule s = BaseSchedule::constant({2, 3, 4}, 4);
  BaseSchedule shifted = shift_schedule(s, 1);
  CHECK(shifted == BaseSchedule::constant({3, 4}, 4));
  CHECK(shift_schedule(s, 5) == BaseSchedule::constant(4));

  BaseSchedule p = BaseSchedule::periodic({}, {2, 3});
  CHECK(shift_schedule(p, 1) == BaseSchedule::periodic({}, {3, 2}));
  CHECK(shift_schedule(p, 2) == p);
  for (long n = 0; n <= 8; ++n)
    for (long k = 1; k <= 6; ++k)
      CHECK(base_at(shift_schedule(p, n), k) == base_at(p, n + k));
}

TEST_CASE("tail_digit_sum matches truncation within the geometric remainder") {
  const int N = 120;
  for (const auto& [s, q] :
       {std::pair{BaseSchedule::constant(2), 3}, std::pair{BaseSchedule::constant(3), 3},
        std::pair{BaseSchedule::constant({2, 3, 4}, 4), 4},
        std::pair{BaseSchedule::periodic({5}, {3, 2}), 5},
        std::pair{BaseSchedule::periodic({}, {2, 3}), 3}}) {
    for (long n = 0; n <= 6; ++n) {
      Rational closed = tail_digit_sum(s, n, q);
      Rational partial(0);
      for (long j = n + 1; j <= N; ++j)
        partial += Rational(base_at(s, j) - 1, ipow(Integer(q), static_cast<unsigned long>(j)));
      Rational gap = closed - partial;
      CHECK(gap >= 0);
      CHECK(gap <= Rational(1, ipow(Integer(q), N)));
    }
  }
}

TEST_CASE("alternating_unit_sum lies in the hull of its partial sums") {
  for (const BaseSchedule& s :
       {BaseSchedule::constant(2), BaseSchedule::constant(3),
        BaseSchedule::periodic({2}, {3, 2}), BaseSchedule::periodic({}, {2, 3, 4})}) {
    std::vector<int> bases;
    for (long k = 1; k <= 60; ++k) bases.push_back(base_at(s, k));
    auto partials = oracle::alternating_partials(bases, {}, 60);
    Rational value = alternating_unit_sum(s);
    Rational lo = partials[58] < partials[59] ? partials[58] : partials[59];
    Rational hi = partials[58] < partials[59] ? partials[59] : partials[58];
    CHECK(value >= lo);
    CHECK(value <= hi);
  }
  CHECK(alternating_unit_sum(BaseSchedule::constant(2)) == Rational(1, 3));
}

TEST_CASE("schedule JSON round trip") {
  for (const BaseSchedule& s :
       {BaseSchedule::constant({2, 3}, 4), BaseSchedule::periodic({5}, {3, 2})}) {
    CHECK(schedule_from_json(schedule_to_json(s)) == s);
  }
  auto j = nlohmann::json::parse(R"({"prefix":[],"tail":{"kind":"constant","value":2}})");
  CHECK(schedule_from_json(j) == BaseSchedule::constant(2));
}
