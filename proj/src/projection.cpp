#include "cantor/projection.hpp"

#include <algorithm>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

// Reads the word in base q, any tail; the Max tail is the closed-form sum
// sum_{j>m} (q_j - 1)/q^j. Shared by eval_f and the symmetry check.
Rational project_word(const ProjectionContext& ctx, const CantorDigits& d) {
  Rational sum(0);
  Integer qpow(1);
  for (long k = 1; k <= d.length(); ++k) {
    qpow *= ctx.q;
    int digit = d.digits[static_cast<size_t>(k - 1)];
    if (digit != 0) sum += Rational(digit, qpow);
  }
  if (d.tail == TailKind::Max) sum += tail_digit_sum(ctx.schedule, d.length(), ctx.q);
  return sum;
}

void require_same_schedule(const ProjectionContext& ctx, const CantorDigits& d) {
  if (!(d.schedule == ctx.schedule))
    fail("InvalidArgument", "word schedule differs from the projection context");
}

}  // namespace

ProjectionContext::ProjectionContext(BaseSchedule s, int q_in)
    : schedule(std::move(s)), q(q_in), bound_class_(BoundClass::Mixed) {
  validate(schedule);
  if (q < 2) fail("InvalidArgument", "target base q must be >= 2");
  bound_class_ = is_bounded_by(schedule, q);  // throws on q_n > q
}

Rational eval_f(const ProjectionContext& ctx, const CantorDigits& d) {
  require_same_schedule(ctx, d);
  validate(d);
  if (d.tail == TailKind::Max && !d.digits.empty())
    fail("NonCanonicalWord",
         "f is defined on canonical words only; canonicalize the max-tail word first");
  return project_word(ctx, d);
}

Rational f_one(const ProjectionContext& ctx) {
  return tail_digit_sum(ctx.schedule, 0, ctx.q);
}

JumpReport jump_at(const ProjectionContext& ctx, const CantorDigits& d) {
  require_same_schedule(ctx, d);
  validate(d);
  if (is_word_for_zero(d) || is_word_for_one(d))
    fail("EndpointNoJump", "jump is defined at interior Q-rational points only");
  if (d.tail != TailKind::Zero || d.digits.back() == 0)
    fail("NonCanonicalWord", "jump expects a zero-tail word ending in a nonzero digit");

  long n = d.length();
  JumpReport report;
  report.position = n;
  Integer qn = ipow(Integer(ctx.q), static_cast<unsigned long>(n));
  report.jump = Rational(1, qn) - tail_digit_sum(ctx.schedule, n, ctx.q);
  report.lower_bound = Rational(1, qn * (ctx.q - 1));
  report.upper_bound = Rational(ctx.q - 2, qn * (ctx.q - 1));
  report.bounds_apply =
      is_bounded_by(shift_schedule(ctx.schedule, n), ctx.q) == BoundClass::AllStrictlyLess;
  return report;
}

SymmetryTriple symmetry_check(const ProjectionContext& ctx, const CantorDigits& d) {
  require_same_schedule(ctx, d);
  Rational fx = eval_f(ctx, d);
  // the complement word keeps its max tail; f jumps at the canonical twin
  Rational fc = project_word(ctx, complement(d));
  return SymmetryTriple{fx, fc, f_one(ctx)};
}

std::pair<Rational, Rational> shift_commutation_check(const ProjectionContext& ctx,
                                                      const CantorDigits& d, long k) {
  require_same_schedule(ctx, d);
  validate(d);
  if (k < 1 || k > d.length())
    fail("InvalidArgument", "shift count must satisfy 1 <= k <= |d|");

  // left: f over the shifted schedule applied to sigma^k(x)
  CantorDigits shifted = shift(d, k);
  ProjectionContext shifted_ctx(shifted.schedule, ctx.q);
  Rational lhs = eval_f(shifted_ctx, shifted);

  // right: base-q shift of the image word, digit-wise
  Rational rhs(0);
  Integer qpow(1);
  for (long j = k + 1; j <= d.length(); ++j) {
    qpow *= ctx.q;
    int digit = d.digits[static_cast<size_t>(j - 1)];
    if (digit != 0) rhs += Rational(digit, qpow);
  }
  return {lhs, rhs};
}

MonotonicityWitness monotonicity_witness(const ProjectionContext& ctx,
                                         const CantorDigits& d1, const CantorDigits& d2) {
  require_same_schedule(ctx, d1);
  require_same_schedule(ctx, d2);
  Rational x1 = decode(d1);
  Rational x2 = decode(d2);
  if (x1 == x2) fail("EqualInputs", "monotonicity witness needs two distinct points");
  if (x1 > x2) fail("InvalidArgument", "expected decode(d1) < decode(d2)");

  long scan = std::max(d1.length(), d2.length()) + 1;
  long n0 = 0;
  for (long k = 1; k <= scan; ++k) {
    if (digit_at(d1, k) != digit_at(d2, k)) {
      n0 = k;
      break;
    }
  }

  MonotonicityWitness w;
  w.first_difference = n0;
  w.gap = eval_f(ctx, d2) - eval_f(ctx, d1);
  w.lower_bound = Rational(1, ipow(Integer(ctx.q), static_cast<unsigned long>(n0))) -
                  tail_digit_sum(ctx.schedule, n0, ctx.q);
  return w;
}

namespace {

DerivVerdict verdict_from_tail(const ProjectionContext& ctx) {
  if (ctx.bound_class() == BoundClass::AllEqual) return DerivVerdict::DerivativeOne;
  bool tail_all_equal = std::all_of(ctx.schedule.tail.begin(), ctx.schedule.tail.end(),
                                    [&](int t) { return t == ctx.q; });
  // tail == q everywhere leaves only finitely many q_n < q (in the prefix);
  // any q_n < q recurring in the tail pattern forces a singular f
  return tail_all_equal ? DerivVerdict::NonDifferentiable : DerivVerdict::Singular;
}

}  // namespace

DerivativeProbe derivative_probe(const ProjectionContext& ctx,
                                 const std::vector<int>& base_word, int depth,
                                 std::optional<long> forced_horizon) {
  if (depth < 1) fail("InvalidArgument", "probe depth must be >= 1");
  CantorDigits point{ctx.schedule, base_word, TailKind::Zero};
  validate(point);

  DerivativeProbe probe;
  Integer prod(1);
  Integer qpow(1);
  for (long n = 1; n <= depth; ++n) {
    prod *= base_at(ctx.schedule, n);
    qpow *= ctx.q;
    probe.ranks.push_back(n);
    probe.two_point.emplace_back(prod, qpow);
    // mu_f(cylinder) = sum_{j>n}(q_j - 1)/q^j, |cylinder| = 1/(q_1...q_n)
    probe.ratios.push_back(Rational(prod) * tail_digit_sum(ctx.schedule, n, ctx.q));
  }
  probe.verdict =
      forced_horizon.has_value() ? DerivVerdict::Inconclusive : verdict_from_tail(ctx);
  return probe;
}

Rational integral_f(const ProjectionContext& ctx) {
  return f_one(ctx) / 2;
}

}  // namespace cantor
