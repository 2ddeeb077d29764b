#include <doctest.h>

#include <random>
#include <set>

#include "cantor/block_map.hpp"
#include "cantor/errors.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

BlockWord random_word(const BlockAlphabet& a, int len, std::mt19937_64& rng) {
  std::vector<int> letters = theta(a);
  BlockWord w{a, {}};
  for (int i = 0; i < len; ++i)
    w.alphas.push_back(letters[rng() % letters.size()]);
  return w;
}

std::string error_name(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    return e.name();
  }
  return "";
}

}  // namespace

TEST_CASE("alphabet validation and theta") {
  CHECK_THROWS_AS(BlockAlphabet(3, 0), DomainError);
  CHECK_THROWS_AS(BlockAlphabet(5, 5), DomainError);
  CHECK(theta(BlockAlphabet(5, 0)) == std::vector<int>{1, 2, 3, 4});
  CHECK(theta(BlockAlphabet(5, 2)) == std::vector<int>{1, 3, 4});
  CHECK(theta_size(BlockAlphabet(5, 0)) == 4);
  CHECK(theta_size(BlockAlphabet(5, 2)) == 3);
}

TEST_CASE("parse pinned cases") {
  BlockAlphabet a(5, 0);
  BlockWord w = parse_blocks(a, QaryDigits{5, {0, 0, 3, 0, 2, 1}, TailKind::Zero});
  CHECK(w.alphas == std::vector<int>{3, 2, 1});

  CHECK(error_name([&] { parse_blocks(a, QaryDigits{5, {3}, TailKind::Zero}); }) ==
        "MalformedBlock");

  BlockAlphabet u2(5, 2);
  CHECK(error_name([&] { parse_blocks(u2, QaryDigits{5, {2, 3}, TailKind::Zero}); }) ==
        "MalformedBlock");
  CHECK(error_name([&] { parse_blocks(u2, QaryDigits{5, {0}, TailKind::Zero}); }) ==
        "DigitOutOfTheta");
  CHECK(error_name([&] { parse_blocks(a, QaryDigits{5, {0, 0}, TailKind::Zero}); }) ==
        "TrailingPartialBlock");

  CHECK(parse_blocks(a, QaryDigits{5, {}, TailKind::Zero}).alphas.empty());
}

TEST_CASE("expand pinned cases and round trip") {
  BlockAlphabet a(5, 0);
  CHECK(expand_blocks(BlockWord{a, {3, 2, 1}}).digits ==
        std::vector<int>{0, 0, 3, 0, 2, 1});
  CHECK(expand_blocks(BlockWord{a, {}}).digits.empty());

  // the other direction on a well-formed digit input
  QaryDigits wellformed{5, {0, 0, 3, 0, 2, 1}, TailKind::Zero};
  CHECK(expand_blocks(parse_blocks(a, wellformed)).digits == wellformed.digits);

  std::mt19937_64 rng(71);
  for (const BlockAlphabet& alphabet :
       {BlockAlphabet(5, 0), BlockAlphabet(5, 2), BlockAlphabet(6, 3), BlockAlphabet(4, 1)}) {
    for (int t = 0; t < 125; ++t) {
      BlockWord w = random_word(alphabet, 1 + static_cast<int>(rng() % 6), rng);
      BlockWord back = parse_blocks(alphabet, expand_blocks(w));
      CHECK(back.alphas == w.alphas);
    }
  }
}

TEST_CASE("eval_g pinned values") {
  CHECK(eval_g(BlockWord{BlockAlphabet(5, 0), {3, 2, 1}}) == Rational(86, 125));
  CHECK(eval_g(BlockWord{BlockAlphabet(5, 0), {3, 2, 1}}) ==
        oracle::qary_sum(5, {3, 2, 1}));
  CHECK(eval_g(BlockWord{BlockAlphabet(5, 0), {}}) == 0);
  CHECK(eval_g(BlockWord{BlockAlphabet(5, 2), {1}}) == Rational(1, 5));
}

TEST_CASE("image digits stay in Theta and g is injective") {
  std::mt19937_64 rng(73);
  BlockAlphabet a(5, 2);
  std::set<Rational> values;
  std::set<Rational> points;
  std::set<std::vector<int>> words;
  while (words.size() < 200) {
    BlockWord w = random_word(a, 1 + static_cast<int>(rng() % 7), rng);
    if (!words.insert(w.alphas).second) continue;
    for (int d : g_image_digits(w).digits) CHECK(in_theta(a, d));
    // denominator divides q^{|alphas|}
    Rational v = eval_g(w);
    CHECK(ipow(Integer(5), static_cast<unsigned long>(w.length())) % denominator(v) == 0);
    values.insert(v);
    // distinct accepted inputs decode to distinct points: well-formed
    // expansions never end in 0, so zero-padding cannot collide them
    points.insert(decode(expand_blocks(w)));
  }
  CHECK(values.size() == words.size());
  CHECK(points.size() == words.size());
}

TEST_CASE("invert_g pinned cases and bijection sweep") {
  BlockAlphabet a(5, 0);
  CHECK(invert_g(a, QaryDigits{5, {3, 2, 1}, TailKind::Zero}).alphas ==
        std::vector<int>{3, 2, 1});
  CHECK_THROWS_AS(invert_g(a, QaryDigits{5, {3, 0, 1}, TailKind::Zero}), DomainError);

  std::mt19937_64 rng(79);
  for (int t = 0; t < 500; ++t) {
    BlockWord w = random_word(a, 1 + static_cast<int>(rng() % 7), rng);
    CHECK(invert_g(a, g_image_digits(w)).alphas == w.alphas);
  }
}

TEST_CASE("monotonicity classes") {
  CHECK(monotonicity_class(BlockAlphabet(5, 0)) == Monotonicity::Decreasing);
  CHECK(monotonicity_class(BlockAlphabet(5, 1)) == Monotonicity::Decreasing);
  CHECK(monotonicity_class(BlockAlphabet(5, 3)) == Monotonicity::Increasing);
  CHECK(monotonicity_class(BlockAlphabet(5, 4)) == Monotonicity::Increasing);
  CHECK(monotonicity_class(BlockAlphabet(6, 2)) == Monotonicity::NonMonotone);
  CHECK(monotonicity_class(BlockAlphabet(4, 2)) == Monotonicity::Increasing);
  CHECK(monotonicity_class(BlockAlphabet(4, 0)) == Monotonicity::Decreasing);
}

TEST_CASE("documented order-flip pair for u=0") {
  BlockAlphabet dec(5, 0);
  Rational x1 = decode(expand_blocks(BlockWord{dec, {1}}));
  Rational x2 = decode(expand_blocks(BlockWord{dec, {2}}));
  CHECK(x1 == Rational(1, 5));
  CHECK(x2 == Rational(2, 25));
  CHECK(x1 > x2);
  CHECK(eval_g(BlockWord{dec, {1}}) < eval_g(BlockWord{dec, {2}}));

  BlockAlphabet inc(5, 4);
  Rational y1 = decode(expand_blocks(BlockWord{inc, {1}}));
  Rational y2 = decode(expand_blocks(BlockWord{inc, {2}}));
  CHECK(y1 < y2);
  CHECK(eval_g(BlockWord{inc, {1}}) < eval_g(BlockWord{inc, {2}}));
}

TEST_CASE("monotonicity probe agrees with the class verdict") {
  for (const auto& [q, u] : {std::pair{5, 0}, {5, 1}, {5, 3}, {5, 4}, {6, 2}, {4, 2}, {4, 0}}) {
    MonotonicityReport r = monotonicity_probe(BlockAlphabet(q, u), 400);
    CHECK(r.consistent);
  }
}

TEST_CASE("shift commutation pinned cases and sweep") {
  BlockAlphabet a(5, 0);
  BlockWord w{a, {3, 2, 1}};
  auto [lhs, rhs] = g_shift_commutation(w, 1);
  CHECK(lhs.digits == std::vector<int>{2, 1});
  CHECK(rhs.digits == std::vector<int>{2, 1});

  auto [l2, r2] = g_shift_commutation(w, 3);
  CHECK(l2.digits.empty());
  CHECK(r2.digits.empty());

  std::mt19937_64 rng(83);
  for (const BlockAlphabet& alphabet : {BlockAlphabet(5, 0), BlockAlphabet(6, 3)}) {
    for (int t = 0; t < 100; ++t) {
      BlockWord word = random_word(alphabet, 1 + static_cast<int>(rng() % 6), rng);
      long n = 1 + static_cast<long>(rng() % static_cast<unsigned long>(word.length()));
      auto [l, r] = g_shift_commutation(word, n);
      CHECK(l.digits == r.digits);
    }
  }
}

TEST_CASE("derivative probe matches the closed form on single blocks") {
  BlockAlphabet a(5, 0);
  for (int c : {1, 2, 3, 4}) {
    BlockWord w{a, {c}};
    for (const GQuotientSample& s : g_derivative_probe(a, w, 1)) {
      int e = s.alpha;
      // (e-c) q^{e+c-1} / (e q^c - c q^e), from the two-point expansion
      Rational num((e - c) * ipow(Integer(5), static_cast<unsigned long>(e + c - 1)));
      Rational den(Integer(e) * ipow(Integer(5), static_cast<unsigned long>(c)) -
                   Integer(c) * ipow(Integer(5), static_cast<unsigned long>(e)));
      Rational expected = num / den;
      CHECK(s.quotient == expected);
      CHECK(s.exponent == e - 1);
    }
  }
}

TEST_CASE("derivative probe exponents spread the quotients") {
  BlockAlphabet a(5, 0);
  BlockWord w{a, {4, 4}};
  auto samples = g_derivative_probe(a, w, 2);
  REQUIRE(samples.size() == 3);
  for (const GQuotientSample& s : samples) CHECK(s.exponent == 2 + s.alpha);
  // magnitudes grow with alpha across orders of magnitude
  Rational prev_abs(0);
  for (const GQuotientSample& s : samples) {
    Rational mag(abs(s.quotient));
    CHECK(mag > prev_abs);
    prev_abs = mag;
  }
  Rational first(abs(samples.front().quotient));
  Rational last(abs(samples.back().quotient));
  CHECK(last > first * 3);

  // all-ones word perturbed at the last position: exponent e - 1
  BlockWord ones{a, {1, 1, 1}};
  for (const GQuotientSample& s : g_derivative_probe(a, ones, 3))
    CHECK(s.exponent == (3 - 1) + s.alpha - 3);
}
