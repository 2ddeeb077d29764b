#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cantor/base_schedule.hpp"
#include "cantor/codec.hpp"

namespace cantor {

// Compact schedule tag: "Q[2,3;c4]" (prefix 2,3, constant tail 4) or
// "Q[;p2,3]" (empty prefix, repeating segment 2,3).
std::string format_schedule_tag(const BaseSchedule& s);
BaseSchedule parse_schedule_tag(std::string_view text);

// Digit list "1.2.3"; empty list renders as "".
std::string format_digit_list(const std::vector<int>& digits);
std::vector<int> parse_digit_list(std::string_view text);

// Digit word "1.2.3" with a trailing "!" for max-tail words; "!" alone is
// the word for 1, "" the word for 0.
std::string format_word_digits(const CantorDigits& d);
std::string format_word(const CantorDigits& d);  // "Q[...] 1.2.3"

// Word text with an explicit schedule, e.g. from a --word argument.
CantorDigits parse_word(std::string_view text, const BaseSchedule& s);

}  // namespace cantor
