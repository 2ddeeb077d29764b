#include "cantor/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cantor/block_map.hpp"
#include "cantor/codec.hpp"
#include "cantor/errors.hpp"
#include "cantor/fractal_dim.hpp"
#include "cantor/projection.hpp"
#include "cantor/salem.hpp"
#include "cantor/text_format.hpp"

namespace cantor::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kCsvHeader = "# cantor-lab v1";

enum class Format { Table, Json, Csv };

Format parse_format(const std::string& text) {
  if (text == "table") return Format::Table;
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw CLI::ValidationError("--format", "expected table, json or csv");
}

std::string read_arg_or_file(const std::string& text) {
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) fail("ParseError", "cannot read file '" + text.substr(1) + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return text;
}

BaseSchedule schedule_from_arg(const std::string& arg) {
  std::string text = read_arg_or_file(arg);
  if (!text.empty() && text.front() == '{')
    return schedule_from_json(nlohmann::json::parse(text));
  return parse_schedule_tag(text);
}

WeightMatrix weights_from_arg(const std::string& arg) {
  std::string text = read_arg_or_file(arg);
  return weights_from_json(nlohmann::json::parse(text));
}

// Accepts "1.0.1", "1.0.1!", "!", "" or the full "Q[...] 1.0.1" form.
CantorDigits word_from_arg(const std::string& text, const std::optional<BaseSchedule>& s) {
  if (text.rfind("Q[", 0) == 0) {
    size_t space = text.find(' ');
    BaseSchedule embedded = parse_schedule_tag(
        space == std::string::npos ? text : text.substr(0, space));
    std::string digits = space == std::string::npos ? "" : text.substr(space + 1);
    return parse_word(digits, embedded);
  }
  if (!s) fail("ParseError", "digit word needs --schedule");
  return parse_word(text, *s);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string bound_class_text(BoundClass c) {
  switch (c) {
    case BoundClass::AllEqual: return "AllEqual";
    case BoundClass::AllStrictlyLess: return "AllStrictlyLess";
    case BoundClass::Mixed: return "Mixed";
  }
  return "?";
}

std::string verdict_text(DerivVerdict v) {
  switch (v) {
    case DerivVerdict::DerivativeOne: return "DerivativeOne";
    case DerivVerdict::Singular: return "Singular";
    case DerivVerdict::NonDifferentiable: return "NonDifferentiable";
    case DerivVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string monotonicity_text(Monotonicity m) {
  switch (m) {
    case Monotonicity::Decreasing: return "Decreasing";
    case Monotonicity::Increasing: return "Increasing";
    case Monotonicity::NonMonotone: return "NonMonotone";
  }
  return "?";
}

// Key/value emitter with identical content for table and json modes.
class Report {
public:
  explicit Report(Format format) : format_(format) {}

  void add(const std::string& key, const std::string& value) {
    rows_.emplace_back(key, value);
  }
  void add(const std::string& key, const Rational& value) {
    add(key, format_rational(value));
  }
  void add(const std::string& key, long value) { add(key, std::to_string(value)); }
  void add(const std::string& key, bool value) { add(key, bool_text(value)); }
  void add_float(const std::string& key, double value) { add(key, format_double(value)); }

  void print(std::ostream& out) const {
    if (format_ == Format::Json) {
      ordered_json j;
      for (const auto& [k, v] : rows_) j[k] = v;
      out << j.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : rows_) out << k << ": " << v << "\n";
  }

private:
  Format format_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

void print_csv(std::ostream& out, const std::string& header,
               const std::vector<std::vector<std::string>>& rows,
               const std::vector<std::string>& trailers = {}) {
  out << kCsvHeader << "\n" << header << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  for (const auto& t : trailers) out << "# " << t << "\n";
}

struct ConvertOptions {
  std::string schedule;
  std::string value;
  std::string word;
  int max_digits = 32;
  bool canonicalize = false;
  bool complement = false;
  bool alternating = false;
  bool cylinder = false;
  long shift_by = 0;
  long info = 0;
  int q = 0;
};

int run_convert(const ConvertOptions& opt, Format format, std::ostream& out) {
  std::optional<BaseSchedule> schedule;
  if (!opt.schedule.empty()) schedule = schedule_from_arg(opt.schedule);
  Report report(format);

  if (opt.info > 0) {
    if (!schedule) fail("ParseError", "--info needs --schedule");
    report.add("schedule", format_schedule_tag(*schedule));
    std::string bases;
    for (long k = 1; k <= opt.info; ++k) {
      if (k > 1) bases += ",";
      bases += std::to_string(base_at(*schedule, k));
    }
    report.add("bases", bases);
    report.add("product", product_to(*schedule, opt.info).str());
    if (opt.q >= 2)
      report.add("bound_class", bound_class_text(is_bounded_by(*schedule, opt.q)));
    report.print(out);
    return 0;
  }

  if (!opt.value.empty()) {
    if (!schedule) fail("ParseError", "encoding needs --schedule");
    Rational x = parse_rational(opt.value);
    EncodeResult enc = encode(x, *schedule, opt.max_digits);
    report.add("schedule", format_schedule_tag(*schedule));
    report.add("value", x);
    report.add("word", format_word_digits(enc.word));
    report.add("exact", enc.exact);
    report.add("residual", enc.residual);
    report.print(out);
    return 0;
  }

  CantorDigits d = word_from_arg(opt.word, schedule);
  report.add("schedule", format_schedule_tag(d.schedule));
  report.add("word", format_word_digits(d));

  if (opt.canonicalize) {
    CantorDigits canonical = canonicalize(d);
    report.add("canonical", format_word_digits(canonical));
    report.add("value", decode(canonical));
  } else if (opt.complement) {
    CantorDigits comp = complement(d);
    report.add("complement", format_word_digits(comp));
    report.add("value", decode(comp));
  } else if (opt.shift_by > 0) {
    CantorDigits shifted = shift(d, opt.shift_by);
    report.add("shift", opt.shift_by);
    report.add("shifted_schedule", format_schedule_tag(shifted.schedule));
    report.add("shifted_word", format_word_digits(shifted));
    report.add("value", decode(shifted));
  } else if (opt.cylinder) {
    auto [inf, sup] = cylinder_interval(Cylinder{d.schedule, d.digits});
    report.add("inf", inf);
    report.add("sup", sup);
    report.add("length", Rational(sup - inf));
  } else if (opt.alternating) {
    Rational v = decode_alternating(d);
    report.add("value", v);
    report.add_float("float", to_double(v));
  } else {
    Rational v = decode(d);
    report.add("value", v);
    report.add_float("float", to_double(v));
  }
  report.print(out);
  return 0;
}

struct EvalFOptions {
  std::string schedule;
  int q = 0;
  std::string word;
  bool symmetry = false;
  long commute = 0;
  std::string witness;
};

int run_eval_f(const EvalFOptions& opt, Format format, std::ostream& out) {
  BaseSchedule s = schedule_from_arg(opt.schedule);
  ProjectionContext ctx(s, opt.q);
  CantorDigits d = word_from_arg(opt.word, s);
  Report report(format);
  report.add("schedule", format_schedule_tag(s));
  report.add("q", static_cast<long>(opt.q));
  report.add("word", format_word_digits(d));

  if (opt.symmetry) {
    SymmetryTriple t = symmetry_check(ctx, d);
    report.add("f", t.f_x);
    report.add("f_complement", t.f_complement);
    report.add("f_one", t.f_at_one);
    report.add("sum_equals_f_one", Rational(t.f_x + t.f_complement) == t.f_at_one);
  } else if (opt.commute > 0) {
    auto [lhs, rhs] = shift_commutation_check(ctx, d, opt.commute);
    report.add("k", opt.commute);
    report.add("lhs", lhs);
    report.add("rhs", rhs);
    report.add("equal", lhs == rhs);
  } else if (!opt.witness.empty()) {
    CantorDigits d2 = word_from_arg(opt.witness, s);
    MonotonicityWitness w = monotonicity_witness(ctx, d, d2);
    report.add("first_difference", w.first_difference);
    report.add("gap", w.gap);
    report.add("lower_bound", w.lower_bound);
  } else {
    Rational y = eval_f(ctx, d);
    report.add("f", y);
    report.add_float("float", to_double(y));
  }
  report.print(out);
  return 0;
}

int run_jump(const std::string& schedule, int q, const std::string& word, Format format,
             std::ostream& out) {
  BaseSchedule s = schedule_from_arg(schedule);
  ProjectionContext ctx(s, q);
  CantorDigits d = word_from_arg(word, s);
  JumpReport jr = jump_at(ctx, d);
  Report report(format);
  report.add("position", jr.position);
  report.add("jump", jr.jump);
  report.add("lower_bound", jr.lower_bound);
  report.add("upper_bound", jr.upper_bound);
  report.add("bounds_apply", jr.bounds_apply);
  report.print(out);
  return 0;
}

int run_integral(const std::string& schedule, int q, Format format, std::ostream& out) {
  BaseSchedule s = schedule_from_arg(schedule);
  ProjectionContext ctx(s, q);
  Rational value = integral_f(ctx);
  Report report(format);
  report.add("integral", value);
  report.add_float("float", to_double(value));
  report.add("lower_bound", Rational(1, 2 * (q - 1)));
  report.add("upper_bound", Rational(1, 2));
  report.print(out);
  return 0;
}

struct ProbeFOptions {
  std::string schedule;
  int q = 0;
  std::string word;
  int depth = 12;
  long forced_horizon = 0;
};

int run_probe_f(const ProbeFOptions& opt, Format format, std::ostream& out) {
  BaseSchedule s = schedule_from_arg(opt.schedule);
  ProjectionContext ctx(s, opt.q);
  std::vector<int> base = parse_digit_list(opt.word);
  std::optional<long> horizon;
  if (opt.forced_horizon > 0) horizon = opt.forced_horizon;
  DerivativeProbe probe = derivative_probe(ctx, base, opt.depth, horizon);

  if (format == Format::Csv) {
    std::vector<std::vector<std::string>> rows;
    for (size_t i = 0; i < probe.ranks.size(); ++i)
      rows.push_back({std::to_string(probe.ranks[i]), numerator(probe.ratios[i]).str(),
                      denominator(probe.ratios[i]).str(),
                      format_double(to_double(probe.ratios[i]))});
    print_csv(out, "rank,ratio_numerator,ratio_denominator,ratio_float", rows,
              {"verdict=" + verdict_text(probe.verdict)});
    return 0;
  }
  Report report(format);
  report.add("verdict", verdict_text(probe.verdict));
  for (size_t i = 0; i < probe.ranks.size(); ++i) {
    std::string key = "rank_" + std::to_string(probe.ranks[i]);
    report.add(key + "_ratio", probe.ratios[i]);
    report.add(key + "_two_point", probe.two_point[i]);
  }
  report.print(out);
  return 0;
}

struct EvalSalemOptions {
  std::string weights;
  std::string word;
  int terms = 24;
  bool tilde = false;
  std::string distribution;
  bool compose = false;
  std::string schedule;
  int q = 0;
};

void add_eval_result(Report& report, const std::string& prefix, const EvalResult& r) {
  report.add(prefix + "value", r.value);
  report.add(prefix + "tail_bound", r.tail_bound);
  report.add(prefix + "terms_used", static_cast<long>(r.terms_used));
}

int run_eval_salem(const EvalSalemOptions& opt, Format format, std::ostream& out) {
  WeightMatrix P = weights_from_arg(opt.weights);
  Report report(format);

  if (!opt.distribution.empty()) {
    Rational x = parse_rational(opt.distribution);
    EvalResult r = eval_distribution(P, x, opt.terms);
    report.add("x", x);
    add_eval_result(report, "", r);
    report.add_float("float", to_double(r.value));
  } else if (opt.compose) {
    BaseSchedule s = schedule_from_arg(opt.schedule);
    ProjectionContext ctx(s, opt.q);
    CantorDigits d = word_from_arg(opt.word, s);
    auto [lhs, rhs] = composition_check(P, ctx, d, opt.terms);
    add_eval_result(report, "lhs_", lhs);
    add_eval_result(report, "rhs_", rhs);
    report.add("equal", lhs.value == rhs.value);
  } else {
    CantorDigits d = word_from_arg(opt.word, P.schedule);
    EvalResult r = opt.tilde ? eval_F_tilde(P, d, opt.terms) : eval_F(P, d, opt.terms);
    report.add("word", format_word_digits(d));
    add_eval_result(report, "", r);
    report.add_float("float", to_double(r.value));
  }
  report.print(out);
  return 0;
}

int run_check_hypotheses(const std::string& weights, const std::string& variant_text,
                         Format format, std::ostream& out) {
  WeightMatrix P = weights_from_arg(weights);
  SalemVariant variant;
  if (variant_text == "example1") variant = SalemVariant::Example1;
  else if (variant_text == "example2") variant = SalemVariant::Example2;
  else throw CLI::ValidationError("--variant", "expected example1 or example2");

  HypothesisReport hr = check_nondiff_hypotheses(P, variant);
  Report report(format);
  report.add("variant", variant_text);
  report.add("adjacent_signs_ok", hr.adjacent_signs_ok);
  report.add("product_first_nonzero", hr.product_first_nonzero);
  report.add("product_last_nonzero", hr.product_last_nonzero);
  if (variant == SalemVariant::Example1) {
    report.add("disjunction_ok", hr.disjunction_ok);
    report.add("disjunction_interpreted", hr.disjunction_interpreted);
  }
  report.add("all_hold", hr.all_hold);
  report.print(out);
  return 0;
}

int run_probe_salem(const std::string& weights, const std::string& word, int depth,
                    Format format, std::ostream& out) {
  WeightMatrix P = weights_from_arg(weights);
  std::vector<int> base = parse_digit_list(word);
  auto ranks = oscillation_probe(P, base, depth);

  if (format == Format::Csv) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& rank : ranks)
      for (const auto& sample : rank.samples)
        rows.push_back({std::to_string(rank.rank), std::to_string(sample.digit),
                        numerator(sample.quotient).str(), denominator(sample.quotient).str(),
                        format_double(to_double(sample.quotient))});
    print_csv(out, "rank,digit,quotient_num,quotient_den,quotient_float", rows);
    return 0;
  }
  Report report(format);
  for (const auto& rank : ranks)
    for (const auto& sample : rank.samples)
      report.add("rank_" + std::to_string(rank.rank) + "_digit_" +
                     std::to_string(sample.digit),
                 sample.quotient);
  report.print(out);
  return 0;
}

struct ParseGOptions {
  int q = 0;
  int u = 0;
  std::string input;
  bool expand = false;
  std::string alphas;
  bool invert = false;
  std::string image;
};

int run_parse_g(const ParseGOptions& opt, Format format, std::ostream& out) {
  BlockAlphabet a(opt.q, opt.u);
  Report report(format);
  if (opt.expand) {
    BlockWord w{a, parse_digit_list(opt.alphas)};
    QaryDigits digits = expand_blocks(w);
    report.add("alphas", format_digit_list(w.alphas));
    report.add("digits", format_digit_list(digits.digits));
  } else if (opt.invert) {
    QaryDigits y{opt.q, parse_digit_list(opt.image), TailKind::Zero};
    BlockWord w = invert_g(a, y);
    report.add("image", format_digit_list(y.digits));
    report.add("alphas", format_digit_list(w.alphas));
  } else {
    QaryDigits digits{opt.q, parse_digit_list(opt.input), TailKind::Zero};
    BlockWord w = parse_blocks(a, digits);
    report.add("digits", format_digit_list(digits.digits));
    report.add("alphas", format_digit_list(w.alphas));
    report.add("blocks", w.length());
  }
  report.print(out);
  return 0;
}

struct EvalGOptions {
  int q = 0;
  int u = 0;
  std::string alphas;
  bool monotonicity_class_only = false;
  long commute = 0;
};

int run_eval_g(const EvalGOptions& opt, Format format, std::ostream& out) {
  BlockAlphabet a(opt.q, opt.u);
  Report report(format);
  if (opt.monotonicity_class_only) {
    report.add("class", monotonicity_text(monotonicity_class(a)));
    report.print(out);
    return 0;
  }
  BlockWord w{a, parse_digit_list(opt.alphas)};
  if (opt.commute > 0) {
    auto [lhs, rhs] = g_shift_commutation(w, opt.commute);
    report.add("n", opt.commute);
    report.add("lhs", format_digit_list(lhs.digits));
    report.add("rhs", format_digit_list(rhs.digits));
    report.add("equal", lhs.digits == rhs.digits);
  } else {
    Rational y = eval_g(w);
    report.add("alphas", format_digit_list(w.alphas));
    report.add("g", y);
    report.add_float("float", to_double(y));
  }
  report.print(out);
  return 0;
}

struct ProbeGOptions {
  int q = 0;
  int u = 0;
  std::string alphas;
  long position = 1;
  int max_samples = 16;
  bool monotonicity = false;
  int trials = 1000;
  std::uint64_t seed = 0x5eed;
};

int run_probe_g(const ProbeGOptions& opt, Format format, std::ostream& out) {
  BlockAlphabet a(opt.q, opt.u);
  if (opt.monotonicity) {
    MonotonicityReport r = monotonicity_probe(a, opt.trials, opt.seed);
    Report report(format);
    report.add("class", monotonicity_text(r.expected));
    report.add("trials", r.trials);
    report.add("concordant", r.concordant);
    report.add("discordant", r.discordant);
    report.add("consistent", r.consistent);
    report.print(out);
    return 0;
  }

  BlockWord w{a, parse_digit_list(opt.alphas)};
  auto samples = g_derivative_probe(a, w, opt.position, opt.max_samples);
  if (format == Format::Csv) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : samples)
      rows.push_back({std::to_string(opt.position), std::to_string(s.alpha),
                      numerator(s.quotient).str(), denominator(s.quotient).str(),
                      std::to_string(s.exponent)});
    print_csv(out, "n,alpha,quotient_num,quotient_den,closed_form_exponent", rows);
    return 0;
  }
  Report report(format);
  report.add("position", opt.position);
  for (const auto& s : samples) {
    report.add("alpha_" + std::to_string(s.alpha) + "_quotient", s.quotient);
    report.add("alpha_" + std::to_string(s.alpha) + "_exponent", s.exponent);
  }
  report.print(out);
  return 0;
}

int run_dim(int q, int u, double tol, Format format, std::ostream& out) {
  BlockAlphabet a(q, u);
  DimensionEstimate est = dimension_Dg(a, tol);
  Report report(format);
  report.add("q", static_cast<long>(q));
  report.add("u", static_cast<long>(u));
  report.add_float("dimension_Dg", est.value);
  report.add_float("residual", est.residual);
  report.add("iterations", static_cast<long>(est.iterations));
  report.add_float("dimension_Eg", dimension_Eg(a));
  report.print(out);
  return 0;
}

struct BoxcountOptions {
  int q = 0;
  int u = 0;
  int m_min = 1;
  int m_max = 4;
  std::uint64_t budget = 0;  // 0: env or default
  bool calibrate = false;
};

std::uint64_t resolve_budget(std::uint64_t flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("CANTOR_LAB_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    fail("ParseError", "CANTOR_LAB_BUDGET must be a positive integer");
  }
  return 1'000'000;
}

int run_boxcount(const BoxcountOptions& opt, Format format, std::ostream& out) {
  std::uint64_t budget = resolve_budget(opt.budget);
  GraphDimensionFit fit;
  if (opt.calibrate) {
    fit = identity_dimension_estimate(opt.q, opt.m_min, opt.m_max);
  } else {
    BlockAlphabet a(opt.q, opt.u);
    fit = graph_dimension_estimate(a, opt.m_min, opt.m_max, budget);
  }

  if (format == Format::Csv) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& rec : fit.records)
      rows.push_back({std::to_string(rec.depth), std::to_string(rec.box_count),
                      format_double(-std::log(to_double(rec.side))),
                      format_double(std::log(static_cast<double>(rec.box_count))),
                      format_double(rec.fitted_slope)});
    print_csv(out, "m,box_count,log_inv_side,log_count,fitted_slope", rows,
              {"least_squares_slope=" + format_double(fit.slope)});
    return 0;
  }
  Report report(format);
  for (const auto& rec : fit.records)
    report.add("boxes_m" + std::to_string(rec.depth), static_cast<long>(rec.box_count));
  report.add_float("least_squares_slope", fit.slope);
  report.print(out);
  return 0;
}

}  // namespace

const std::vector<SubcommandInfo>& dispatch_table() {
  static const std::vector<SubcommandInfo> table = {
      {"convert",
       {"base_at", "product_to", "is_bounded_by", "decode", "encode", "canonicalize",
        "complement", "shift", "cylinder_interval", "decode_alternating"}},
      {"eval-f", {"eval_f", "symmetry_check", "shift_commutation_check", "monotonicity_witness"}},
      {"jump", {"jump_at"}},
      {"integral", {"integral_f"}},
      {"probe-f", {"derivative_probe"}},
      {"eval-salem", {"eval_F", "eval_F_tilde", "eval_distribution", "composition_check"}},
      {"check-hypotheses", {"check_nondiff_hypotheses"}},
      {"probe-salem", {"oscillation_probe"}},
      {"parse-g", {"parse_blocks", "expand_blocks", "invert_g"}},
      {"eval-g", {"eval_g", "monotonicity_class", "g_shift_commutation"}},
      {"probe-g", {"g_derivative_probe", "monotonicity_probe"}},
      {"dim", {"dimension_Dg", "dimension_Eg"}},
      {"boxcount", {"box_count_graph", "graph_dimension_estimate"}},
      {"selftest", {"selftest"}},
  };
  return table;
}

const std::vector<std::string>& all_operations() {
  static const std::vector<std::string> ops = {
      // base_schedule
      "base_at", "product_to", "is_bounded_by",
      // cantor_codec
      "decode", "encode", "canonicalize", "complement", "shift", "cylinder_interval",
      "decode_alternating",
      // projection_f
      "eval_f", "jump_at", "symmetry_check", "shift_commutation_check",
      "monotonicity_witness", "derivative_probe", "integral_f",
      // salem_family
      "eval_F", "eval_distribution", "eval_F_tilde", "check_nondiff_hypotheses",
      "oscillation_probe", "composition_check",
      // block_map_g
      "parse_blocks", "expand_blocks", "eval_g", "invert_g", "monotonicity_class",
      "monotonicity_probe", "g_shift_commutation", "g_derivative_probe",
      // fractal_dim
      "dimension_Dg", "dimension_Eg", "box_count_graph", "graph_dimension_estimate",
      // cli
      "selftest",
  };
  return ops;
}

int selftest(std::ostream& out) {
  int passed = 0;
  int total = 0;
  auto check = [&](const std::string& name, bool ok) {
    ++total;
    passed += ok ? 1 : 0;
    out << (ok ? "ok " : "FAIL ") << name << "\n";
  };

  BaseSchedule c2 = BaseSchedule::constant(2);
  CantorDigits word{c2, {1, 0, 1}, TailKind::Zero};
  check("decode 1.0.1 over Q[;c2] = 5/8", decode(word) == Rational(5, 8));
  check("encode inverts decode", encode(Rational(5, 8), c2, 8).word.digits == word.digits);

  CantorDigits dual{c2, {0, 1, 0}, TailKind::Max};
  check("canonicalize preserves value", decode(canonicalize(dual)) == decode(dual));
  check("complement sums to 1", decode(complement(word)) + decode(word) == 1);

  BaseSchedule mixed = BaseSchedule::constant({2, 3, 4}, 4);
  CantorDigits w2{mixed, {1, 2, 3}, TailKind::Zero};
  Rational lhs = partial_sum(w2, 1) + decode(shift(w2, 1)) / Rational(product_to(mixed, 1));
  check("shift identity at n=1", lhs == decode(w2));

  ProjectionContext ctx(c2, 3);
  SymmetryTriple sym = symmetry_check(ctx, word);
  check("f symmetry over Q[;c2], q=3",
        Rational(sym.f_x + sym.f_complement) == sym.f_at_one && sym.f_at_one == Rational(1, 2));
  check("integral closed form = 1/4", integral_f(ctx) == Rational(1, 4));

  BlockAlphabet a(5, 0);
  QaryDigits digits{5, {0, 0, 3, 0, 2, 1}, TailKind::Zero};
  BlockWord bw = parse_blocks(a, digits);
  check("block parse/expand round trip", expand_blocks(bw).digits == digits.digits);
  check("eval_g = 86/125", eval_g(bw) == Rational(86, 125));

  DimensionEstimate est = dimension_Dg(a, 1e-12);
  check("dimension residual < 1e-12", std::abs(est.residual) < 1e-12);

  WeightMatrix salem = WeightMatrix::constant({Rational(3, 10), Rational(7, 10)});
  CantorDigits half{salem.schedule, {1, 1}, TailKind::Zero};
  check("Salem F(3/4) = 51/100", eval_F(salem, half, 8).value == Rational(51, 100));

  check("boxcount m=1 equals 4 for q=5,u=0", box_count_graph(a, 1).box_count == 4);

  out << "selftest: " << passed << "/" << total << " passed\n";
  return passed == total ? 0 : 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact arithmetic for Cantor-series numeral systems"};
  app.require_subcommand(1);
  std::string format_text = "table";
  app.add_option("--format", format_text, "output format: table, json or csv")
      ->capture_default_str();

  ConvertOptions convert_opt;
  auto* convert = app.add_subcommand("convert", "digit-word codec and schedule info");
  convert->add_option("--schedule", convert_opt.schedule, "schedule JSON, tag or @file");
  convert->add_option("--value", convert_opt.value, "rational to encode");
  convert->add_option("--digits", convert_opt.max_digits, "max digits for encode");
  convert->add_option("--word", convert_opt.word, "digit word, e.g. 1.0.1 or 1.0.1!");
  convert->add_flag("--canonicalize", convert_opt.canonicalize, "rewrite to canonical form");
  convert->add_flag("--complement", convert_opt.complement, "digit word of 1-x");
  convert->add_flag("--alternating", convert_opt.alternating, "alternating-series value");
  convert->add_flag("--cylinder", convert_opt.cylinder, "interval of the cylinder");
  convert->add_option("--shift", convert_opt.shift_by, "drop the first n digits");
  convert->add_option("--info", convert_opt.info, "show bases and product up to n");
  convert->add_option("--q", convert_opt.q, "classify bases against q (with --info)");

  EvalFOptions evalf_opt;
  auto* evalf = app.add_subcommand("eval-f", "digit projection into base q");
  evalf->add_option("--schedule", evalf_opt.schedule)->required();
  evalf->add_option("--q", evalf_opt.q)->required();
  evalf->add_option("--word", evalf_opt.word);
  evalf->add_flag("--symmetry", evalf_opt.symmetry, "check f(x)+f(1-x) = f(1)");
  evalf->add_option("--commute", evalf_opt.commute, "check shift commutation at k");
  evalf->add_option("--witness", evalf_opt.witness, "second word for a monotonicity witness");

  std::string jump_schedule, jump_word;
  int jump_q = 0;
  auto* jump = app.add_subcommand("jump", "two-sided jump at a Q-rational point");
  jump->add_option("--schedule", jump_schedule)->required();
  jump->add_option("--q", jump_q)->required();
  jump->add_option("--word", jump_word)->required();

  std::string integral_schedule;
  int integral_q = 0;
  auto* integral = app.add_subcommand("integral", "Lebesgue integral of f");
  integral->add_option("--schedule", integral_schedule)->required();
  integral->add_option("--q", integral_q)->required();

  ProbeFOptions probef_opt;
  auto* probef = app.add_subcommand("probe-f", "cylinder derivative ratios");
  probef->add_option("--schedule", probef_opt.schedule)->required();
  probef->add_option("--q", probef_opt.q)->required();
  probef->add_option("--word", probef_opt.word, "base point digits");
  probef->add_option("--depth", probef_opt.depth);
  probef->add_option("--forced-horizon", probef_opt.forced_horizon,
                     "classify from a finite window only");

  EvalSalemOptions salem_opt;
  auto* salem = app.add_subcommand("eval-salem", "Salem-type series");
  salem->add_option("--weights", salem_opt.weights, "weight matrix JSON or @file")->required();
  salem->add_option("--word", salem_opt.word);
  salem->add_option("--terms", salem_opt.terms);
  salem->add_flag("--tilde", salem_opt.tilde, "alternating variant");
  salem->add_option("--distribution", salem_opt.distribution, "evaluate at x");
  salem->add_flag("--compose", salem_opt.compose, "check F = F_Q after projection");
  salem->add_option("--schedule", salem_opt.schedule, "Cantor schedule for --compose");
  salem->add_option("--q", salem_opt.q, "target base for --compose");

  std::string hyp_weights, hyp_variant = "example1";
  auto* hyp = app.add_subcommand("check-hypotheses", "non-differentiability hypotheses");
  hyp->add_option("--weights", hyp_weights)->required();
  hyp->add_option("--variant", hyp_variant, "example1 or example2")->capture_default_str();

  std::string psalem_weights, psalem_word;
  int psalem_depth = 6;
  auto* psalem = app.add_subcommand("probe-salem", "difference-quotient oscillation");
  psalem->add_option("--weights", psalem_weights)->required();
  psalem->add_option("--word", psalem_word, "base point digits");
  psalem->add_option("--depth", psalem_depth);

  ParseGOptions parseg_opt;
  auto* parseg = app.add_subcommand("parse-g", "block parser for the map g");
  parseg->add_option("--q", parseg_opt.q)->required();
  parseg->add_option("--u", parseg_opt.u)->required();
  parseg->add_option("--input", parseg_opt.input, "base-q digits to parse");
  parseg->add_flag("--expand", parseg_opt.expand, "expand alphas to digits");
  parseg->add_option("--alphas", parseg_opt.alphas, "block digits for --expand");
  parseg->add_flag("--invert", parseg_opt.invert, "preimage of an image word");
  parseg->add_option("--image", parseg_opt.image, "image digits for --invert");

  EvalGOptions evalg_opt;
  auto* evalg = app.add_subcommand("eval-g", "value and identities of g");
  evalg->add_option("--q", evalg_opt.q)->required();
  evalg->add_option("--u", evalg_opt.u)->required();
  evalg->add_option("--alphas", evalg_opt.alphas);
  evalg->add_flag("--class", evalg_opt.monotonicity_class_only, "monotonicity class");
  evalg->add_option("--commute", evalg_opt.commute, "check shift commutation at n");

  ProbeGOptions probeg_opt;
  auto* probeg = app.add_subcommand("probe-g", "difference quotients of g");
  probeg->add_option("--q", probeg_opt.q)->required();
  probeg->add_option("--u", probeg_opt.u)->required();
  probeg->add_option("--alphas", probeg_opt.alphas);
  probeg->add_option("--position", probeg_opt.position);
  probeg->add_option("--max-samples", probeg_opt.max_samples);
  probeg->add_flag("--monotonicity", probeg_opt.monotonicity, "random pair tallies");
  probeg->add_option("--trials", probeg_opt.trials);
  probeg->add_option("--seed", probeg_opt.seed);

  int dim_q = 0, dim_u = 0;
  double dim_tol = 1e-12;
  auto* dim = app.add_subcommand("dim", "Hausdorff dimensions of D(g) and E(g)");
  dim->add_option("--q", dim_q)->required();
  dim->add_option("--u", dim_u)->required();
  dim->add_option("--tol", dim_tol)->capture_default_str();

  BoxcountOptions box_opt;
  auto* box = app.add_subcommand("boxcount", "box counting on the graph of g");
  box->add_option("--q", box_opt.q)->required();
  box->add_option("--u", box_opt.u, "padding digit (ignored with --calibrate)");
  box->add_option("--m-min", box_opt.m_min);
  box->add_option("--m-max", box_opt.m_max);
  box->add_option("--budget", box_opt.budget, "enumeration budget (or CANTOR_LAB_BUDGET)");
  box->add_flag("--calibrate", box_opt.calibrate, "count the graph of y = x instead");

  auto* self = app.add_subcommand("selftest", "run the embedded invariant suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    Format format = parse_format(format_text);
    if (convert->parsed()) return run_convert(convert_opt, format, out);
    if (evalf->parsed()) return run_eval_f(evalf_opt, format, out);
    if (jump->parsed()) return run_jump(jump_schedule, jump_q, jump_word, format, out);
    if (integral->parsed()) return run_integral(integral_schedule, integral_q, format, out);
    if (probef->parsed()) return run_probe_f(probef_opt, format, out);
    if (salem->parsed()) return run_eval_salem(salem_opt, format, out);
    if (hyp->parsed()) return run_check_hypotheses(hyp_weights, hyp_variant, format, out);
    if (psalem->parsed()) return run_probe_salem(psalem_weights, psalem_word, psalem_depth,
                                                 format, out);
    if (parseg->parsed()) return run_parse_g(parseg_opt, format, out);
    if (evalg->parsed()) return run_eval_g(evalg_opt, format, out);
    if (probeg->parsed()) return run_probe_g(probeg_opt, format, out);
    if (dim->parsed()) return run_dim(dim_q, dim_u, dim_tol, format, out);
    if (box->parsed()) return run_boxcount(box_opt, format, out);
    if (self->parsed()) return selftest(out);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace cantor::cli
