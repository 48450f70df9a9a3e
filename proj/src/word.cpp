#include "pisot/word.hpp"

#include "pisot/error.hpp"

#include <cctype>

namespace pisot {

std::string word_to_text(const Word& w, int alphabet_size) {
  std::string out;
  if (alphabet_size <= 10) {
    out.reserve(w.size());
    for (Digit d : w) out.push_back(static_cast<char>('0' + d));
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(static_cast<int>(w[i]));
  }
  return out;
}

Word word_from_text(std::string_view text, int alphabet_size) {
  Word w;
  if (alphabet_size <= 10) {
    w.reserve(text.size());
    for (char ch : text) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      if (ch < '0' || ch - '0' >= alphabet_size)
        throw Error(ErrorKind::ParseError, std::string("digit '") + ch + "' outside the alphabet");
      w.push_back(static_cast<Digit>(ch - '0'));
    }
    return w;
  }
  int value = -1;
  auto flush = [&] {
    if (value < 0) return;
    if (value >= alphabet_size) throw Error(ErrorKind::ParseError, "digit " + std::to_string(value) + " outside the alphabet");
    w.push_back(static_cast<Digit>(value));
    value = -1;
  };
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      value = (value < 0 ? 0 : value * 10) + (ch - '0');
      if (value > 255) throw Error(ErrorKind::ParseError, "digit value too large");
    } else if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      throw Error(ErrorKind::ParseError, std::string("unexpected character '") + ch + "'");
    }
  }
  flush();
  return w;
}

}  // namespace pisot
