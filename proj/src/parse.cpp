#include "mubar/parse.hpp"

#include <cctype>

namespace mubar {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  WordExpr run() {
    WordExpr w = word(/*stoppers=*/"");
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError("unexpected character '" + std::string(1, text_[pos_]) +
                           "'",
                       pos_);
    return w;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError("expected '" + std::string(1, c) + "'", pos_);
    ++pos_;
  }

  int digits() {
    skip_ws();
    const std::size_t start = pos_;
    long long v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000) throw ParseError("index too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected digits", pos_);
    return static_cast<int>(v);
  }

  WordExpr word(std::string_view stoppers) {
    WordExpr w;
    w.kind = WordExpr::Kind::Word;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      if (stoppers.find(text_[pos_]) != std::string_view::npos) break;
      w.children.push_back(term(stoppers));
    }
    return w;
  }

  WordExpr term(std::string_view stoppers) {
    WordExpr t = primary(stoppers);
    while (peek_is('^')) {
      const std::size_t at = pos_;
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '-')
        throw ParseError("only the exponent -1 is supported", at);
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '1')
        throw ParseError("only the exponent -1 is supported", at);
      ++pos_;
      WordExpr inv;
      inv.kind = WordExpr::Kind::Inverse;
      inv.children.push_back(std::move(t));
      t = std::move(inv);
    }
    return t;
  }

  WordExpr primary(std::string_view) {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      WordExpr out;
      out.kind = WordExpr::Kind::Commutator;
      out.children.push_back(word(",)]"));
      expect(',');
      out.children.push_back(word(",)]"));
      expect(']');
      return out;
    }
    if (c == 'x') {
      const std::size_t at = pos_;
      ++pos_;
      skip_ws();
      if (pos_ + 1 >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
        throw ParseError("x-generator needs two digit indices", at);
      const int i = text_[pos_] - '0', j = text_[pos_ + 1] - '0';
      pos_ += 2;
      if (i >= j)
        throw ParseError("x-generator indices must satisfy i < j", at);
      if (i < 1) throw ParseError("strand indices start at 1", at);
      WordExpr out;
      out.kind = WordExpr::Kind::Gen;
      out.gen = Gen::strand_pair(i, j);
      return out;
    }
    if (c == 'm') {
      const std::size_t at = pos_;
      ++pos_;
      const int i = digits();
      if (i < 1) throw ParseError("meridian indices start at 1", at);
      WordExpr out;
      out.kind = WordExpr::Kind::Gen;
      out.gen = Gen::meridian(i);
      return out;
    }
    throw ParseError("expected a generator, '[' or end of word", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string WordExpr::str() const {
  switch (kind) {
    case Kind::Gen:
      return gen.str();
    case Kind::Inverse:
      return children[0].str() + "^-1";
    case Kind::Commutator:
      return "[" + children[0].str() + "," + children[1].str() + "]";
    case Kind::Word: {
      std::string out;
      for (const WordExpr& c : children) {
        if (!out.empty()) out += " ";
        out += c.str();
      }
      return out;
    }
  }
  return "";
}

WordExpr parse_word(std::string_view text) { return Parser(text).run(); }

GroupWord to_group_word(const WordExpr& e) {
  switch (e.kind) {
    case WordExpr::Kind::Gen:
      return GroupWord::generator(e.gen);
    case WordExpr::Kind::Inverse:
      return inverse(to_group_word(e.children[0]));
    case WordExpr::Kind::Commutator:
      return commutator(to_group_word(e.children[0]),
                        to_group_word(e.children[1]));
    case WordExpr::Kind::Word: {
      GroupWord out;
      for (const WordExpr& c : e.children) out = mul(out, to_group_word(c));
      return out;
    }
  }
  return GroupWord{};
}

GroupWord parse_group_word(std::string_view text) {
  return to_group_word(parse_word(text));
}

}  // namespace mubar
