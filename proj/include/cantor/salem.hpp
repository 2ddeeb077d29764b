#pragma once

#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cantor/codec.hpp"
#include "cantor/projection.hpp"

namespace cantor {

// Weight matrix P = ||p_{i,n}||: one column per level n with q_n entries,
// each in (-1,1) and summing to 1. Columns are stored like the base
// schedule: an explicit prefix plus a constant or repeating tail, so the
// implied schedule is recoverable from the column sizes alone.
struct WeightMatrix {
  BaseSchedule schedule;
  std::vector<std::vector<Rational>> columns_prefix;
  TailRule tail_rule = TailRule::Constant;
  std::vector<std::vector<Rational>> tail_columns;

  static WeightMatrix constant(std::vector<Rational> column);
  static WeightMatrix with_prefix(std::vector<std::vector<Rational>> prefix,
                                  std::vector<Rational> tail_column);
};

void validate(const WeightMatrix& P);

const std::vector<Rational>& column_at(const WeightMatrix& P, long n);

// beta_{i,n} = sum_{j<i} p_{j,n}; beta_{0,n} = 0.
Rational beta(const std::vector<Rational>& column, int i);

// Condition 4: 0 < beta_{i,n} < 1 for every i != 0.
bool condition4_holds(const WeightMatrix& P);

struct EvalResult {
  Rational value;       // partial sum through k = terms_used
  Rational tail_bound;  // exact bound on the discarded tail
  int terms_used = 0;
};

// F(x) = beta_{e_1,1} + sum_{k>=2} beta_{e_k,k} prod_{n<k} p_{e_n,n},
// truncated at `terms`. Zero-tail words truncate exactly once the stored
// digits run out (beta_{0,k} = 0).
EvalResult eval_F(const WeightMatrix& P, const CantorDigits& d, int terms);

// Distribution-function special case: nonnegative weights over a constant
// base; 0 below 0, 1 from 1 up, else F on the greedy encoding of x.
EvalResult eval_distribution(const WeightMatrix& P, const Rational& x, int terms);

// Alternating-series variant: levels with even n use the reflected index
// q_n - 1 - e_n in both beta and the product factors. Requires condition 4.
EvalResult eval_F_tilde(const WeightMatrix& P, const CantorDigits& d, int terms);

enum class SalemVariant { Example1, Example2 };

struct HypothesisReport {
  SalemVariant variant = SalemVariant::Example1;
  bool adjacent_signs_ok = false;     // p_{i,n} p_{i-1,n} < 0 for all n, i >= 1
  bool product_first_nonzero = false; // prod q_k p_{0,k} stays away from 0
  bool product_last_nonzero = false;  // prod q_k p_{q_k-1,k} stays away from 0
  bool disjunction_ok = false;        // Example1 extra condition, see below
  bool disjunction_interpreted = false;
  bool all_hold = false;
};

// Decides the non-differentiability hypotheses exactly over the column
// pattern. The Example1 variant carries an extra disjunction on an index
// d_n with no fixed definition; it is evaluated with d_n read as q_n and
// flagged `disjunction_interpreted` in the report.
HypothesisReport check_nondiff_hypotheses(const WeightMatrix& P, SalemVariant variant);

struct QuotientSample {
  int digit = 0;       // perturbed digit value
  Rational quotient;   // (F(x') - F(x)) / (x' - x), exact
};

struct RankOscillation {
  long rank = 0;
  std::vector<QuotientSample> samples;
};

// Difference quotients from perturbing the word digit-by-digit through each
// column; evidence for oscillation, not a limit claim.
std::vector<RankOscillation> oscillation_probe(const WeightMatrix& P,
                                               const std::vector<int>& point_word, int depth);

// Both sides of F = F_{xi,Q} o f: the series over the Cantor word and the
// series over its base-q projection. Equal term by term.
std::pair<EvalResult, EvalResult> composition_check(const WeightMatrix& P,
                                                    const ProjectionContext& ctx,
                                                    const CantorDigits& d, int terms);

// JSON descriptor with rationals as "num/den" strings:
//   {"columns_prefix":[[...],...],
//    "tail":{"kind":"constant","column":[...]} |
//           {"kind":"periodic","columns":[[...],...]}}
WeightMatrix weights_from_json(const nlohmann::json& j);
nlohmann::json weights_to_json(const WeightMatrix& P);

}  // namespace cantor
