#include "cantor/salem.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

BaseSchedule schedule_from_columns(const std::vector<std::vector<Rational>>& prefix,
                                   TailRule rule,
                                   const std::vector<std::vector<Rational>>& tail) {
  BaseSchedule s;
  s.tail_rule = rule;
  for (const auto& col : prefix) s.prefix.push_back(static_cast<int>(col.size()));
  for (const auto& col : tail) s.tail.push_back(static_cast<int>(col.size()));
  validate(s);
  return s;
}

void validate_column(const std::vector<Rational>& col, long n) {
  if (col.size() < 2)
    fail("InvalidWeightMatrix", "column " + std::to_string(n) + " needs q_n >= 2 entries");
  Rational sum(0);
  for (const Rational& p : col) {
    if (p <= -1 || p >= 1)
      fail("InvalidWeightMatrix",
           "weight outside (-1,1) in column " + std::to_string(n));
    sum += p;
  }
  if (sum != 1)
    fail("InvalidWeightMatrix", "column " + std::to_string(n) + " does not sum to 1");
}

Rational column_rho(const std::vector<Rational>& col) {
  Rational rho(0);
  for (const Rational& p : col) {
    Rational a(abs(p));
    if (a > rho) rho = a;
  }
  return rho;
}

Rational column_beta_max(const std::vector<Rational>& col) {
  Rational best(0);
  Rational run(0);
  for (size_t i = 0; i + 1 < col.size(); ++i) {
    run += col[i];
    Rational a(abs(run));
    if (a > best) best = a;
  }
  return best;
}

}  // namespace

WeightMatrix WeightMatrix::constant(std::vector<Rational> column) {
  WeightMatrix P;
  P.tail_rule = TailRule::Constant;
  P.tail_columns = {std::move(column)};
  P.schedule = schedule_from_columns(P.columns_prefix, P.tail_rule, P.tail_columns);
  validate(P);
  return P;
}

WeightMatrix WeightMatrix::with_prefix(std::vector<std::vector<Rational>> prefix,
                                       std::vector<Rational> tail_column) {
  WeightMatrix P;
  P.columns_prefix = std::move(prefix);
  P.tail_rule = TailRule::Constant;
  P.tail_columns = {std::move(tail_column)};
  P.schedule = schedule_from_columns(P.columns_prefix, P.tail_rule, P.tail_columns);
  validate(P);
  return P;
}

void validate(const WeightMatrix& P) {
  validate(P.schedule);
  if (P.tail_columns.empty())
    fail("InvalidWeightMatrix", "tail rule needs at least one column");
  if (P.tail_rule == TailRule::Constant && P.tail_columns.size() != 1)
    fail("InvalidWeightMatrix", "constant tail carries exactly one column");
  long n = 1;
  for (const auto& col : P.columns_prefix) validate_column(col, n++);
  for (const auto& col : P.tail_columns) validate_column(col, n++);

  // column sizes must reproduce q_n for every level
  long lcm_len = std::lcm(static_cast<long>(P.tail_columns.size()),
                          static_cast<long>(P.schedule.tail.size()));
  long window = std::max(pattern_prefix_length(P.schedule),
                         static_cast<long>(P.columns_prefix.size())) +
                lcm_len;
  for (long k = 1; k <= window; ++k)
    if (static_cast<long>(column_at(P, k).size()) != base_at(P.schedule, k))
      fail("InvalidWeightMatrix",
           "column " + std::to_string(k) + " size does not match q_" + std::to_string(k));
}

const std::vector<Rational>& column_at(const WeightMatrix& P, long n) {
  if (n < 1) fail("InvalidArgument", "column index must be >= 1");
  auto prefix_len = static_cast<long>(P.columns_prefix.size());
  if (n <= prefix_len) return P.columns_prefix[static_cast<size_t>(n - 1)];
  long offset = n - prefix_len - 1;
  return P.tail_columns[static_cast<size_t>(offset % static_cast<long>(P.tail_columns.size()))];
}

Rational beta(const std::vector<Rational>& column, int i) {
  if (i < 0 || i >= static_cast<int>(column.size()))
    fail("DigitOutOfColumnRange", "digit " + std::to_string(i) + " outside the column");
  Rational sum(0);
  for (int j = 0; j < i; ++j) sum += column[static_cast<size_t>(j)];
  return sum;
}

bool condition4_holds(const WeightMatrix& P) {
  auto check = [](const std::vector<Rational>& col) {
    Rational run(0);
    for (size_t i = 0; i + 1 < col.size(); ++i) {
      run += col[i];
      if (run <= 0 || run >= 1) return false;
    }
    return true;
  };
  return std::all_of(P.columns_prefix.begin(), P.columns_prefix.end(), check) &&
         std::all_of(P.tail_columns.begin(), P.tail_columns.end(), check);
}

namespace {

// Exact bound on |sum_{k>K} beta_{e_k,k} prod_{n<k} p_{e_n,n}|: sum the
// worst-case magnitudes, closed form over the repeating column pattern.
Rational tail_bound_after(const WeightMatrix& P, long K) {
  auto prefix_len = static_cast<long>(P.columns_prefix.size());
  Rational W(1);
  for (long n = 1; n <= std::min(K, prefix_len); ++n) W *= column_rho(column_at(P, n));
  long period = static_cast<long>(P.tail_columns.size());
  for (long n = prefix_len + 1; n <= K; ++n) W *= column_rho(column_at(P, n));

  Rational bound(0);
  long aligned = std::max(K, prefix_len);
  for (long k = K + 1; k <= aligned; ++k) {
    bound += column_beta_max(column_at(P, k)) * W;
    W *= column_rho(column_at(P, k));
  }

  // periodic remainder: sum_t G^t * S with G = prod of rho over one period
  long rot = (aligned - prefix_len) % period;
  Rational S(0);
  Rational G(1);
  for (long i = 0; i < period; ++i) {
    const auto& col = P.tail_columns[static_cast<size_t>((rot + i) % period)];
    S += column_beta_max(col) * G;
    G *= column_rho(col);
  }
  return bound + W * S / (Rational(1) - G);
}

int reflected_index(const std::vector<Rational>& col, int digit, long level) {
  return level % 2 == 0 ? static_cast<int>(col.size()) - 1 - digit : digit;
}

void require_digit(const std::vector<Rational>& col, int digit, long level) {
  if (digit < 0 || digit >= static_cast<int>(col.size()))
    fail("DigitOutOfColumnRange", "digit e_" + std::to_string(level) + " = " +
                                      std::to_string(digit) + " outside column of size " +
                                      std::to_string(col.size()));
}

// Core accumulation shared by F, F-tilde and the composition routes.
template <typename DigitFn>
EvalResult eval_series(const WeightMatrix& P, DigitFn&& digit_of, int terms, bool reflect) {
  if (terms < 1) fail("InvalidArgument", "terms must be >= 1");
  EvalResult out;
  out.terms_used = terms;
  Rational prod(1);
  for (long k = 1; k <= terms; ++k) {
    const auto& col = column_at(P, k);
    int digit = digit_of(k);
    require_digit(col, digit, k);
    int idx = reflect ? reflected_index(col, digit, k) : digit;
    out.value += beta(col, idx) * prod;
    prod *= col[static_cast<size_t>(idx)];
  }
  out.tail_bound = tail_bound_after(P, terms);
  return out;
}

void require_same_schedule(const WeightMatrix& P, const CantorDigits& d) {
  if (!(d.schedule == P.schedule))
    fail("InvalidArgument", "word schedule differs from the weight matrix");
}

}  // namespace

EvalResult eval_F(const WeightMatrix& P, const CantorDigits& d, int terms) {
  require_same_schedule(P, d);
  validate(d);
  return eval_series(P, [&](long k) { return digit_at(d, k); }, terms, /*reflect=*/false);
}

EvalResult eval_distribution(const WeightMatrix& P, const Rational& x, int terms) {
  for (const auto& col : P.columns_prefix)
    for (const Rational& p : col)
      if (p < 0) fail("NegativeWeight", "distribution regime needs nonnegative weights");
  for (const auto& col : P.tail_columns)
    for (const Rational& p : col)
      if (p < 0) fail("NegativeWeight", "distribution regime needs nonnegative weights");
  if (!P.schedule.prefix.empty() || P.schedule.tail_rule != TailRule::Constant)
    fail("InvalidArgument", "distribution regime needs a constant base");

  if (x < 0) return EvalResult{Rational(0), Rational(0), 0};
  if (x >= 1) return EvalResult{Rational(1), Rational(0), 0};
  EncodeResult enc = encode(x, P.schedule, terms);
  return eval_F(P, enc.word, terms);
}

EvalResult eval_F_tilde(const WeightMatrix& P, const CantorDigits& d, int terms) {
  require_same_schedule(P, d);
  validate(d);
  if (!condition4_holds(P))
    fail("Condition4Violation",
         "F-tilde requires 0 < beta_{i,n} < 1 for every i != 0");
  return eval_series(P, [&](long k) { return digit_at(d, k); }, terms, /*reflect=*/true);
}

HypothesisReport check_nondiff_hypotheses(const WeightMatrix& P, SalemVariant variant) {
  HypothesisReport report;
  report.variant = variant;

  auto signs_alternate = [](const std::vector<Rational>& col) {
    for (size_t i = 1; i < col.size(); ++i)
      if (col[i] * col[i - 1] >= 0) return false;
    return true;
  };
  report.adjacent_signs_ok =
      std::all_of(P.columns_prefix.begin(), P.columns_prefix.end(), signs_alternate) &&
      std::all_of(P.tail_columns.begin(), P.tail_columns.end(), signs_alternate);

  // prod_k q_k p_{i,k} stays away from 0 iff no factor vanishes and the
  // magnitude of one repeating period's product is >= 1
  auto product_nonzero = [&](bool last_entry) {
    auto factor = [&](const std::vector<Rational>& col) {
      const Rational& p = last_entry ? col.back() : col.front();
      return Rational(static_cast<long>(col.size())) * p;
    };
    for (const auto& col : P.columns_prefix)
      if (factor(col) == 0) return false;
    Rational period_product(1);
    for (const auto& col : P.tail_columns) {
      Rational f = factor(col);
      if (f == 0) return false;
      period_product *= f;
    }
    return abs(period_product) >= 1;
  };
  report.product_first_nonzero = product_nonzero(false);
  report.product_last_nonzero = product_nonzero(true);

  if (variant == SalemVariant::Example1) {
    // q_n p_{d_n-1,n} >= 1 or q_n p_{q_n-1,n} <= 1, with the index d_n
    // left undefined upstream; evaluated with d_n read as q_n
    report.disjunction_interpreted = true;
    auto disjunction = [](const std::vector<Rational>& col) {
      Rational f = Rational(static_cast<long>(col.size())) * col.back();
      return f >= 1 || f <= 1;
    };
    report.disjunction_ok =
        std::all_of(P.columns_prefix.begin(), P.columns_prefix.end(), disjunction) &&
        std::all_of(P.tail_columns.begin(), P.tail_columns.end(), disjunction);
  }

  report.all_hold = report.adjacent_signs_ok && report.product_first_nonzero &&
                    report.product_last_nonzero &&
                    (variant != SalemVariant::Example1 || report.disjunction_ok);
  return report;
}

std::vector<RankOscillation> oscillation_probe(const WeightMatrix& P,
                                               const std::vector<int>& point_word, int depth) {
  if (depth < 2) fail("InvalidArgument", "probe depth must be >= 2");
  std::vector<int> base = point_word;
  if (static_cast<long>(base.size()) < depth) base.resize(static_cast<size_t>(depth), 0);
  CantorDigits origin{P.schedule, base, TailKind::Zero};
  validate(origin);

  int terms = static_cast<int>(base.size());
  Rational x0 = decode(origin);
  Rational F0 = eval_F(P, origin, terms).value;

  std::vector<RankOscillation> out;
  for (long m = 1; m <= depth; ++m) {
    RankOscillation rank{m, {}};
    int original = base[static_cast<size_t>(m - 1)];
    int qm = base_at(P.schedule, m);
    for (int e = 0; e < qm; ++e) {
      if (e == original) continue;
      CantorDigits moved = origin;
      moved.digits[static_cast<size_t>(m - 1)] = e;
      Rational dx = decode(moved) - x0;
      Rational dF = eval_F(P, moved, terms).value - F0;
      rank.samples.push_back(QuotientSample{e, dF / dx});
    }
    out.push_back(std::move(rank));
  }
  return out;
}

std::pair<EvalResult, EvalResult> composition_check(const WeightMatrix& P,
                                                    const ProjectionContext& ctx,
                                                    const CantorDigits& d, int terms) {
  if (!(P.schedule == BaseSchedule::constant(ctx.q)))
    fail("InvalidArgument", "composition needs a weight matrix over the constant base q");
  if (!(d.schedule == ctx.schedule))
    fail("InvalidArgument", "word schedule differs from the projection context");
  validate(d);
  if (d.tail != TailKind::Zero)
    fail("NonCanonicalWord", "composition check expects a zero-tail word");

  // left: the series over the Cantor word, columns indexed by its digits
  EvalResult lhs =
      eval_series(P, [&](long k) { return digit_at(d, k); }, terms, /*reflect=*/false);

  // right: the same matrix applied to the base-q projection f(d)
  CantorDigits image{P.schedule, d.digits, TailKind::Zero};
  EvalResult rhs = eval_F(P, image, terms);
  return {lhs, rhs};
}

WeightMatrix weights_from_json(const nlohmann::json& j) {
  auto parse_column = [](const nlohmann::json& arr) {
    std::vector<Rational> col;
    for (const auto& entry : arr) col.push_back(parse_rational(entry.get<std::string>()));
    return col;
  };

  WeightMatrix P;
  if (j.contains("columns_prefix"))
    for (const auto& col : j.at("columns_prefix")) P.columns_prefix.push_back(parse_column(col));
  const auto& tail = j.at("tail");
  auto kind = tail.at("kind").get<std::string>();
  if (kind == "constant") {
    P.tail_rule = TailRule::Constant;
    P.tail_columns = {parse_column(tail.at("column"))};
  } else if (kind == "periodic") {
    P.tail_rule = TailRule::Periodic;
    for (const auto& col : tail.at("columns")) P.tail_columns.push_back(parse_column(col));
  } else {
    fail("ParseError", "unknown tail kind '" + kind + "'");
  }
  P.schedule = schedule_from_columns(P.columns_prefix, P.tail_rule, P.tail_columns);
  validate(P);
  return P;
}

nlohmann::json weights_to_json(const WeightMatrix& P) {
  auto dump_column = [](const std::vector<Rational>& col) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Rational& p : col) arr.push_back(format_rational(p));
    return arr;
  };
  nlohmann::json prefix = nlohmann::json::array();
  for (const auto& col : P.columns_prefix) prefix.push_back(dump_column(col));
  nlohmann::json tail;
  if (P.tail_rule == TailRule::Constant) {
    tail = {{"kind", "constant"}, {"column", dump_column(P.tail_columns.front())}};
  } else {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& col : P.tail_columns) cols.push_back(dump_column(col));
    tail = {{"kind", "periodic"}, {"columns", cols}};
  }
  return {{"columns_prefix", prefix}, {"tail", tail}};
}

}  // namespace cantor
