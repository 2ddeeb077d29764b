#include "cantor/block_map.hpp"

#include <random>

#include "cantor/errors.hpp"

namespace cantor {

BlockAlphabet::BlockAlphabet(int q_in, int u_in) : q(q_in), u(u_in) {
  if (q <= 3) fail("InvalidArgument", "block map needs q > 3");
  if (u < 0 || u > q - 1) fail("InvalidArgument", "padding digit u must lie in {0,...,q-1}");
}

std::vector<int> theta(const BlockAlphabet& a) {
  std::vector<int> out;
  for (int d = 1; d <= a.q - 1; ++d)
    if (d != a.u) out.push_back(d);
  return out;
}

int theta_size(const BlockAlphabet& a) { return a.u == 0 ? a.q - 1 : a.q - 2; }

bool in_theta(const BlockAlphabet& a, int digit) {
  return digit >= 1 && digit <= a.q - 1 && digit != a.u;
}

void validate(const BlockWord& w) {
  for (int alpha : w.alphas)
    if (!in_theta(w.alphabet, alpha))
      fail("DigitOutOfTheta", "block digit " + std::to_string(alpha) + " outside Theta");
}

BlockWord parse_blocks(const BlockAlphabet& a, const QaryDigits& digits) {
  validate(digits);
  if (digits.base != a.q)
    fail("InvalidArgument", "digit word base differs from the block alphabet");
  if (digits.tail != TailKind::Zero)
    fail("InvalidArgument", "block parser expects a zero-tail word");

  BlockWord word{a, {}};
  int run = 0;
  for (int digit : digits.digits) {
    if (digit == a.u) {
      ++run;
      continue;
    }
    if (!in_theta(a, digit))
      fail("DigitOutOfTheta",
           "block terminator " + std::to_string(digit) + " outside Theta");
    if (run != digit - 1)
      fail("MalformedBlock", "digit " + std::to_string(digit) + " needs " +
                                 std::to_string(digit - 1) + " leading copies of u, found " +
                                 std::to_string(run));
    word.alphas.push_back(digit);
    run = 0;
  }
  if (run != 0)
    fail("TrailingPartialBlock",
         "input ends inside a block: " + std::to_string(run) + " trailing copies of u");
  return word;
}

QaryDigits expand_blocks(const BlockWord& w) {
  validate(w);
  QaryDigits out{w.alphabet.q, {}, TailKind::Zero};
  for (int alpha : w.alphas) {
    out.digits.insert(out.digits.end(), static_cast<size_t>(alpha - 1), w.alphabet.u);
    out.digits.push_back(alpha);
  }
  return out;
}

Rational eval_g(const BlockWord& w) {
  validate(w);
  Rational sum(0);
  Integer qpow(1);
  for (int alpha : w.alphas) {
    qpow *= w.alphabet.q;
    sum += Rational(alpha, qpow);
  }
  return sum;
}

QaryDigits g_image_digits(const BlockWord& w) {
  validate(w);
  return QaryDigits{w.alphabet.q, w.alphas, TailKind::Zero};
}

BlockWord invert_g(const BlockAlphabet& a, const QaryDigits& y) {
  validate(y);
  if (y.base != a.q)
    fail("InvalidArgument", "image word base differs from the block alphabet");
  if (y.tail != TailKind::Zero)
    fail("InvalidArgument", "image word must be zero-tailed");
  for (int digit : y.digits)
    if (!in_theta(a, digit))
      fail("DigitOutOfTheta",
           "image digit " + std::to_string(digit) + " outside Theta");
  return BlockWord{a, y.digits};
}

Monotonicity monotonicity_class(const BlockAlphabet& a) {
  if (a.u <= 1) return Monotonicity::Decreasing;
  if (a.u >= a.q - 2) return Monotonicity::Increasing;
  return Monotonicity::NonMonotone;
}

MonotonicityReport monotonicity_probe(const BlockAlphabet& a, int trials, std::uint64_t seed) {
  if (trials < 1) fail("InvalidArgument", "probe needs at least one trial");
  std::mt19937_64 rng(seed);
  std::vector<int> letters = theta(a);
  std::uniform_int_distribution<int> len_dist(1, 6);
  std::uniform_int_distribution<size_t> letter_dist(0, letters.size() - 1);

  auto random_word = [&](int len) {
    BlockWord w{a, {}};
    for (int i = 0; i < len; ++i) w.alphas.push_back(letters[letter_dist(rng)]);
    return w;
  };

  MonotonicityReport report;
  report.trials = trials;
  report.expected = monotonicity_class(a);
  for (int t = 0; t < trials; ++t) {
    // a common block length guarantees a first differing block; a word and
    // its own extension name the same cylinder, not two comparable points
    int len = len_dist(rng);
    BlockWord w1 = random_word(len);
    BlockWord w2 = random_word(len);
    if (w1.alphas == w2.alphas) {
      --t;
      continue;
    }
    Rational x1 = decode(expand_blocks(w1));
    Rational x2 = decode(expand_blocks(w2));
    Rational g1 = eval_g(w1);
    Rational g2 = eval_g(w2);
    bool same_order = (x1 < x2) == (g1 < g2);
    (same_order ? report.concordant : report.discordant) += 1;
  }
  switch (report.expected) {
    case Monotonicity::Decreasing:
      report.consistent = report.concordant == 0;
      break;
    case Monotonicity::Increasing:
      report.consistent = report.discordant == 0;
      break;
    case Monotonicity::NonMonotone:
      report.consistent = report.concordant > 0 && report.discordant > 0;
      break;
  }
  return report;
}

std::pair<QaryDigits, QaryDigits> g_shift_commutation(const BlockWord& w, long n) {
  validate(w);
  if (n < 1 || n > w.length())
    fail("InvalidArgument", "shift count must satisfy 1 <= n <= |w|");

  // left: drop a_1+...+a_n expanded digits, re-parse, take the image word
  QaryDigits expanded = expand_blocks(w);
  long drop = 0;
  for (long i = 0; i < n; ++i) drop += w.alphas[static_cast<size_t>(i)];
  QaryDigits rest{w.alphabet.q,
                  {expanded.digits.begin() + drop, expanded.digits.end()},
                  TailKind::Zero};
  QaryDigits lhs = g_image_digits(parse_blocks(w.alphabet, rest));

  // right: drop n digits of the image word
  QaryDigits rhs{w.alphabet.q,
                 {w.alphas.begin() + n, w.alphas.end()},
                 TailKind::Zero};
  return {lhs, rhs};
}

std::vector<GQuotientSample> g_derivative_probe(const BlockAlphabet& a, const BlockWord& w,
                                                long position, int max_samples) {
  validate(w);
  if (position < 1 || position > w.length())
    fail("InvalidArgument", "probe position must satisfy 1 <= n <= |w|");
  if (max_samples < 1) fail("InvalidArgument", "max_samples must be >= 1");

  long prefix_sum = 0;
  for (long i = 0; i + 1 < position; ++i) prefix_sum += w.alphas[static_cast<size_t>(i)];

  Rational x0 = decode(expand_blocks(w));
  Rational g0 = eval_g(w);

  std::vector<GQuotientSample> out;
  int original = w.alphas[static_cast<size_t>(position - 1)];
  for (int alpha : theta(a)) {
    if (alpha == original) continue;
    if (static_cast<int>(out.size()) >= max_samples) break;
    BlockWord moved = w;
    moved.alphas[static_cast<size_t>(position - 1)] = alpha;
    Rational dx = decode(expand_blocks(moved)) - x0;
    Rational dg = eval_g(moved) - g0;
    out.push_back(GQuotientSample{alpha, dg / dx, prefix_sum + alpha - position});
  }
  return out;
}

}  // namespace cantor
