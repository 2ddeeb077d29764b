#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cantor/codec.hpp"

namespace cantor {

// Setting for the digit projection f: words over Q are re-read in the fixed
// base q. Requires q_n <= q throughout.
struct ProjectionContext {
  BaseSchedule schedule;
  int q = 2;

  ProjectionContext(BaseSchedule s, int q);

  BoundClass bound_class() const { return bound_class_; }

private:
  BoundClass bound_class_;
};

// f of the canonical word: the same digits read in base q. Max-tail words
// other than the word for 1 are rejected; f disagrees on dual
// representations whenever some q_n < q.
Rational eval_f(const ProjectionContext& ctx, const CantorDigits& d);

// f(1) = sum (q_n - 1)/q^n, closed form.
Rational f_one(const ProjectionContext& ctx);

struct JumpReport {
  long position = 0;       // n, the last (nonzero) digit of the word
  Rational jump;           // 1/q^n - sum_{j>n} (q_j - 1)/q^j
  Rational lower_bound;    // 1/((q-1) q^n)
  Rational upper_bound;    // (q-2)/((q-1) q^n)
  bool bounds_apply = false;  // true iff q_j < q for all j > n
};

// Two-sided jump of f at the Q-rational point decode(d).
JumpReport jump_at(const ProjectionContext& ctx, const CantorDigits& d);

struct SymmetryTriple {
  Rational f_x;
  Rational f_complement;
  Rational f_at_one;
};

// f(x) + f(1-x) = f(1), evaluated on the digit pair (d, complement(d)).
SymmetryTriple symmetry_check(const ProjectionContext& ctx, const CantorDigits& d);

// Both routes of f(sigma^k x) = sigma^k(f x): project-then-shift vs
// shift-then-project.
std::pair<Rational, Rational> shift_commutation_check(const ProjectionContext& ctx,
                                                      const CantorDigits& d, long k);

struct MonotonicityWitness {
  long first_difference = 0;  // n_0
  Rational gap;               // f(d2) - f(d1) > 0
  Rational lower_bound;       // 1/q^{n_0} - sum_{j>n_0}(q_j - 1)/q^j >= 0
};

MonotonicityWitness monotonicity_witness(const ProjectionContext& ctx,
                                         const CantorDigits& d1, const CantorDigits& d2);

enum class DerivVerdict { DerivativeOne, Singular, NonDifferentiable, Inconclusive };

struct DerivativeProbe {
  std::vector<long> ranks;
  std::vector<Rational> ratios;       // mu_f(cylinder)/|cylinder| per rank
  std::vector<Rational> two_point;    // (q_1...q_m)/q^m difference quotients
  DerivVerdict verdict = DerivVerdict::Inconclusive;
};

// Exact cylinder-ratio sequence along the point's cylinders. The verdict is
// decided from the schedule's tail pattern; passing forced_horizon
// suppresses the tail extrapolation and reports Inconclusive.
DerivativeProbe derivative_probe(const ProjectionContext& ctx,
                                 const std::vector<int>& base_word, int depth,
                                 std::optional<long> forced_horizon = std::nullopt);

// Closed form (1/2) sum (q_n - 1)/q^n.
Rational integral_f(const ProjectionContext& ctx);

}  // namespace cantor
