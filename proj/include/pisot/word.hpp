#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pisot {

using Digit = std::uint8_t;
using Word = std::vector<Digit>;

// One character per digit when the alphabet has at most 10 symbols,
// otherwise decimal digits separated by ','.
std::string word_to_text(const Word& w, int alphabet_size);
// Inverse of word_to_text. Throws Error(ParseError).
Word word_from_text(std::string_view text, int alphabet_size);

}  // namespace pisot
