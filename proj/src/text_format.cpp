#include "cantor/text_format.hpp"

#include <charconv>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail("ParseError", "bad integer '" + std::string(text) + "'");
  return value;
}

std::vector<int> parse_int_list(std::string_view text, char sep) {
  std::vector<int> out;
  if (text.empty()) return out;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    out.push_back(parse_int(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<int>& values, char sep) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string format_schedule_tag(const BaseSchedule& s) {
  std::string out = "Q[" + join(s.prefix, ',') + ";";
  if (s.tail_rule == TailRule::Constant)
    out += "c" + std::to_string(s.tail.front());
  else
    out += "p" + join(s.tail, ',');
  return out + "]";
}

BaseSchedule parse_schedule_tag(std::string_view text) {
  if (text.size() < 4 || text.substr(0, 2) != "Q[" || text.back() != ']')
    fail("ParseError", "schedule tag must look like Q[2,3;c4]");
  std::string_view body = text.substr(2, text.size() - 3);
  size_t semi = body.find(';');
  if (semi == std::string_view::npos)
    fail("ParseError", "schedule tag needs ';' before the tail rule");
  BaseSchedule s;
  s.prefix = parse_int_list(body.substr(0, semi), ',');
  std::string_view tail = body.substr(semi + 1);
  if (tail.empty()) fail("ParseError", "schedule tag needs a tail rule");
  if (tail.front() == 'c') {
    s.tail_rule = TailRule::Constant;
    s.tail = {parse_int(tail.substr(1))};
  } else if (tail.front() == 'p') {
    s.tail_rule = TailRule::Periodic;
    s.tail = parse_int_list(tail.substr(1), ',');
  } else {
    fail("ParseError", "tail rule must start with 'c' or 'p'");
  }
  validate(s);
  return s;
}

std::string format_digit_list(const std::vector<int>& digits) {
  return join(digits, '.');
}

std::vector<int> parse_digit_list(std::string_view text) {
  return parse_int_list(text, '.');
}

std::string format_word_digits(const CantorDigits& d) {
  std::string out = join(d.digits, '.');
  if (d.tail == TailKind::Max) out += "!";
  return out;
}

std::string format_word(const CantorDigits& d) {
  return format_schedule_tag(d.schedule) + " " + format_word_digits(d);
}

CantorDigits parse_word(std::string_view text, const BaseSchedule& s) {
  CantorDigits d;
  d.schedule = s;
  if (!text.empty() && text.back() == '!') {
    d.tail = TailKind::Max;
    text.remove_suffix(1);
  }
  d.digits = parse_digit_list(text);
  validate(d);
  return d;
}

}  // namespace cantor
