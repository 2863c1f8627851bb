#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "essence/diagnostic.hpp"

namespace essence::dsl {

enum class TokenKind { identifier, string, integer, lbrace, rbrace, at, end };

inline const char* describe(TokenKind k) {
  switch (k) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::string: return "string";
    case TokenKind::integer: return "integer";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::at: return "'@'";
    case TokenKind::end: return "end of input";
  }
  return "?";
}

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;  // unescaped contents for strings
  int line = 1;
  int col = 1;
  int end_line = 1;
  int end_col = 1;
};

struct LexError {
  std::string message;
  int line = 1;
  int col = 1;
};

/// Returns the byte offset of the first malformed UTF-8 sequence, if any.
inline std::optional<std::size_t> find_invalid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    unsigned min = 0;
    unsigned cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2, min = 0x80, cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3, min = 0x800, cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4, min = 0x10000, cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > text.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::nullopt;
}

/// Tokenizer for `.ess` sources. `#` starts a comment; CR is whitespace; the
/// only string escape is `\"`.
class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  /// Tokenizes the whole input; the last token is always `end`.
  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        t.kind = TokenKind::end;
        t.end_line = line_;
        t.end_col = col_;
        out.push_back(std::move(t));
        return out;
      }
      char c = src_[pos_];
      if (c == '{' || c == '}' || c == '@') {
        t.kind = c == '{' ? TokenKind::lbrace : c == '}' ? TokenKind::rbrace : TokenKind::at;
        t.text = std::string(1, c);
        advance();
      } else if (c == '"') {
        t.kind = TokenKind::string;
        t.text = read_string(t.line, t.col);
      } else if (is_digit(c)) {
        t.kind = TokenKind::integer;
        while (pos_ < src_.size() && is_digit(src_[pos_])) t.text.push_back(advance());
      } else if (is_ident_start(c)) {
        t.kind = TokenKind::identifier;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) t.text.push_back(advance());
      } else {
        throw LexError{std::string("unexpected character '") + c + "'", line_, col_};
      }
      t.end_line = line_;
      t.end_col = col_ > 1 ? col_ - 1 : col_;
      out.push_back(std::move(t));
    }
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

  static bool is_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(s.front())) return false;
    for (char c : s)
      if (!is_ident_char(c)) return false;
    return true;
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string read_string(int start_line, int start_col) {
    advance();  // opening quote
    std::string text;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n' || c == '\r') break;
      if (c == '"') {
        advance();
        return text;
      }
      if (c == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '"') {
        advance();
        text.push_back(advance());
        continue;
      }
      text.push_back(advance());
    }
    throw LexError{"unterminated string literal", start_line, start_col};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

/// Quotes `text` for emission; the inverse of the lexer's string rule.
inline std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += "\\\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

/// Bare identifier when possible, quoted string otherwise.
inline std::string name_token(std::string_view name) {
  return Lexer::is_identifier(name) ? std::string(name) : quote(name);
}

}  // namespace essence::dsl
