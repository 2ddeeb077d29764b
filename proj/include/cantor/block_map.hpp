#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cantor/codec.hpp"

namespace cantor {

// Alphabet for the block map g over base q with padding digit u: words of
// the form u...u a (a-1 copies of u before each significant digit a), with
// a drawn from Theta = {1,...,q-1} \ {u}. Requires q > 3.
struct BlockAlphabet {
  int q = 5;
  int u = 0;

  BlockAlphabet(int q, int u);
};

std::vector<int> theta(const BlockAlphabet& a);
int theta_size(const BlockAlphabet& a);
bool in_theta(const BlockAlphabet& a, int digit);

struct BlockWord {
  BlockAlphabet alphabet;
  std::vector<int> alphas;

  long length() const { return static_cast<long>(alphas.size()); }
};

void validate(const BlockWord& w);

// Greedy block scanner: run of u's, then the terminating digit a with run
// length a-1. Rejects with MalformedBlock, DigitOutOfTheta or
// TrailingPartialBlock; acceptance is the finite-depth membership test for
// the domain of g.
BlockWord parse_blocks(const BlockAlphabet& a, const QaryDigits& digits);

// Left inverse of parse_blocks. Finite words carry no padding tail; an
// infinite all-u continuation would add the constant u/(q-1) to the
// decoded x-value, a convention this library does not adopt.
QaryDigits expand_blocks(const BlockWord& w);

// g(x) = sum a_n / q^n.
Rational eval_g(const BlockWord& w);

// The image digit word (a_1 ... a_n) in base q.
QaryDigits g_image_digits(const BlockWord& w);

// Unique preimage of a word whose digits all lie in Theta.
BlockWord invert_g(const BlockAlphabet& a, const QaryDigits& y);

enum class Monotonicity { Decreasing, Increasing, NonMonotone };

// u in {0,1}: decreasing; u in {q-2,q-1}: increasing; otherwise (q > 4)
// not monotone. For q = 4 every u falls in one of the first two cases.
Monotonicity monotonicity_class(const BlockAlphabet& a);

struct MonotonicityReport {
  long concordant = 0;  // pairs ordered the same way by x and by g
  long discordant = 0;
  long trials = 0;
  Monotonicity expected = Monotonicity::Decreasing;
  bool consistent = false;
};

// Random word pairs, ordered by expanded x-value against g-value; tallies
// must agree with monotonicity_class.
MonotonicityReport monotonicity_probe(const BlockAlphabet& a, int trials,
                                      std::uint64_t seed = 0x5eed);

// Both digit words of g(sigma^{a_1+...+a_n} x) = sigma^n(g x).
std::pair<QaryDigits, QaryDigits> g_shift_commutation(const BlockWord& w, long n);

struct GQuotientSample {
  int alpha = 0;        // perturbed block digit
  Rational quotient;    // (g(x') - g(x)) / (x' - x), exact
  long exponent = 0;    // sum_{i<n} a_i + alpha - n, the growth exponent
};

// Perturbs block n through Theta and records the exact difference
// quotients; their magnitudes track q^exponent.
std::vector<GQuotientSample> g_derivative_probe(const BlockAlphabet& a, const BlockWord& w,
                                                long position, int max_samples = 16);

}  // namespace cantor
