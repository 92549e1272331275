#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mubar/freeword.hpp"

namespace mubar {

// Surface syntax:
//   word := term*
//   term := gen | term "^-1" | "[" word "," word "]"
//   gen  := "x" <digit i> <digit j>   (i < j)  |  "m" <digits>
// Whitespace-insensitive between tokens.

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)),
        pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

struct WordExpr {
  enum class Kind { Word, Gen, Inverse, Commutator };

  Kind kind = Kind::Word;
  Gen gen;                         // Kind::Gen only
  std::vector<WordExpr> children;  // Word: terms; Inverse: 1; Commutator: 2

  std::string str() const;  // canonical print; parse(str()) round-trips
  bool operator==(const WordExpr&) const = default;
};

WordExpr parse_word(std::string_view text);  // throws ParseError

GroupWord to_group_word(const WordExpr& e);
GroupWord parse_group_word(std::string_view text);

}  // namespace mubar
