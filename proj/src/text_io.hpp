#pragma once

// Line-oriented tokenizer shared by the text formats. Blank lines and lines
// starting with `c` are skipped.

#include <charconv>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ksp/error.hpp"

namespace ksp::detail {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::optional<Line> next() {
    std::string text;
    while (std::getline(in_, text)) {
      ++number_;
      std::istringstream ss(text);
      Line line{number_, {}};
      for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
      if (line.tokens.empty() || line.tokens[0] == "c") continue;
      return line;
    }
    return std::nullopt;
  }

  int line_number() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

template <typename Int>
Int parse_int(const std::string& tok, int line) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  return value;
}

}  // namespace ksp::detail
