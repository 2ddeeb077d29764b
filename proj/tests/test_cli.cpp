#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cantor/cli.hpp"
#include "cantor/text_format.hpp"

using namespace cantor;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("text format round trips") {
  BaseSchedule s = BaseSchedule::constant({2, 3}, 4);
  CHECK(format_schedule_tag(s) == "Q[2,3;c4]");
  CHECK(parse_schedule_tag("Q[2,3;c4]") == s);
  CHECK(parse_schedule_tag("Q[;p2,3]") == BaseSchedule::periodic({}, {2, 3}));

  CantorDigits d = parse_word("1.0.1", BaseSchedule::constant(2));
  CHECK(d.digits == std::vector<int>{1, 0, 1});
  CHECK(d.tail == TailKind::Zero);
  CHECK(format_word_digits(d) == "1.0.1");

  CantorDigits one = parse_word("!", BaseSchedule::constant(2));
  CHECK(one.digits.empty());
  CHECK(one.tail == TailKind::Max);
  CHECK(format_word(one) == "Q[;c2] !");
}

TEST_CASE("encode example through the CLI") {
  RunResult r = run({"convert", "--schedule",
                     R"({"prefix":[],"tail":{"kind":"constant","value":2}})", "--value", "5/8",
                     "--digits", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("word: 1.0.1\n") != std::string::npos);
  CHECK(r.out.find("exact: true\n") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage and domain errors") {
  RunResult usage = run({"convert", "--no-such-flag"});
  CHECK(usage.code == 2);
  CHECK(usage.err.find("usage error") != std::string::npos);

  RunResult domain = run({"parse-g", "--q", "5", "--u", "0", "--input", "3"});
  CHECK(domain.code == 1);
  CHECK(domain.err.find("MalformedBlock") != std::string::npos);

  RunResult none = run({});
  CHECK(none.code == 2);
}

TEST_CASE("repeated invocations are byte identical") {
  const std::vector<std::vector<std::string>> commands = {
      {"convert", "--schedule", "Q[;c2]", "--value", "5/8", "--digits", "8"},
      {"eval-f", "--schedule", "Q[;c2]", "--q", "3", "--word", "1.0.1", "--symmetry"},
      {"--format", "csv", "probe-f", "--schedule", "Q[;c2]", "--q", "3", "--depth", "6"},
      {"dim", "--q", "5", "--u", "0", "--tol", "1e-12"},
      {"--format", "csv", "boxcount", "--q", "5", "--u", "0", "--m-min", "2", "--m-max", "4"},
  };
  for (const auto& cmd : commands) {
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("json format emits parseable objects") {
  RunResult r = run({"--format", "json", "jump", "--schedule", "Q[;c2]", "--q", "3", "--word",
                     "1"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("jump") == "1/6");
  CHECK(j.at("bounds_apply") == "true");
}

TEST_CASE("csv output carries the version header") {
  RunResult r = run({"--format", "csv", "probe-g", "--q", "5", "--u", "0", "--alphas", "4.4",
                     "--position", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# cantor-lab v1\n", 0) == 0);
  CHECK(r.out.find("n,alpha,quotient_num,quotient_den,closed_form_exponent\n") !=
        std::string::npos);
}

TEST_CASE("dispatch table covers every library operation") {
  std::set<std::string> covered;
  for (const auto& sub : cli::dispatch_table())
    covered.insert(sub.operations.begin(), sub.operations.end());
  for (const std::string& op : cli::all_operations()) {
    INFO("operation ", op);
    CHECK(covered.count(op) == 1);
  }
  // and the table names real subcommands only, each reaching something
  for (const auto& sub : cli::dispatch_table()) CHECK_FALSE(sub.operations.empty());
}

TEST_CASE("selftest passes") {
  std::ostringstream out;
  CHECK(cli::selftest(out) == 0);
  CHECK(out.str().find("FAIL") == std::string::npos);
}

TEST_CASE("env budget override is honoured") {
  setenv("CANTOR_LAB_BUDGET", "10", 1);
  RunResult r = run({"boxcount", "--q", "5", "--u", "0", "--m-min", "2", "--m-max", "6"});
  unsetenv("CANTOR_LAB_BUDGET");
  CHECK(r.code == 1);
  CHECK(r.err.find("BudgetExceeded") != std::string::npos);

  RunResult ok = run({"boxcount", "--q", "5", "--u", "0", "--m-min", "2", "--m-max", "4",
                      "--budget", "100000"});
  CHECK(ok.code == 0);
}
