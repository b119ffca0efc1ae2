#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "fodb/errors.hpp"

namespace fodb {

struct Token {
  enum class Kind {
    Ident,
    Number,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Eq,       // =
    Neq,      // !=
    Tilde,    // ~
    Amp,      // &
    Pipe,     // |
    Arrow,    // ->
    BiArrow,  // <->
    Slash,    // /
    End
  };

  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

// Shared tokenizer for the formula language and the .fodb/.ops/.ded file
// formats. '#' starts a comment running to end of line. Identifiers are
// [A-Za-z_][A-Za-z0-9_]*.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  bool at(Token::Kind k) const { return tok_.kind == k; }
  bool at_ident(std::string_view word) const {
    return tok_.kind == Token::Kind::Ident && tok_.text == word;
  }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  Token expect(Token::Kind k, const std::string& what) {
    if (tok_.kind != k) fail("expected " + what + ", found " + describe(tok_));
    return next();
  }

  void expect_ident(std::string_view word) {
    if (!at_ident(word)) fail("expected '" + std::string(word) + "', found " + describe(tok_));
    next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok_.line, tok_.col, msg);
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::Ident:
      case Token::Kind::Number:
        return "'" + t.text + "'";
      case Token::Kind::End:
        return "end of input";
      default:
        return "'" + t.text + "'";
    }
  }

 private:
  void advance() {
    skip_blank();
    tok_.line = line_;
    tok_.col = col_;
    tok_.text.clear();
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
        ++col_;
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text.assign(text_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++col_;
      }
      tok_.kind = Token::Kind::Number;
      tok_.text.assign(text_.substr(start, pos_ - start));
      return;
    }
    switch (c) {
      case '(': punct(Token::Kind::LParen, "("); return;
      case ')': punct(Token::Kind::RParen, ")"); return;
      case '{': punct(Token::Kind::LBrace, "{"); return;
      case '}': punct(Token::Kind::RBrace, "}"); return;
      case ',': punct(Token::Kind::Comma, ","); return;
      case '~': punct(Token::Kind::Tilde, "~"); return;
      case '&': punct(Token::Kind::Amp, "&"); return;
      case '|': punct(Token::Kind::Pipe, "|"); return;
      case '/': punct(Token::Kind::Slash, "/"); return;
      case '=': punct(Token::Kind::Eq, "="); return;
      case '!':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          pos_ += 2;
          col_ += 2;
          tok_.kind = Token::Kind::Neq;
          tok_.text = "!=";
          return;
        }
        throw ParseError(line_, col_, "unexpected character '!'");
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          col_ += 2;
          tok_.kind = Token::Kind::Arrow;
          tok_.text = "->";
          return;
        }
        throw ParseError(line_, col_, "unexpected character '-'");
      case '<':
        if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' && text_[pos_ + 2] == '>') {
          pos_ += 3;
          col_ += 3;
          tok_.kind = Token::Kind::BiArrow;
          tok_.text = "<->";
          return;
        }
        throw ParseError(line_, col_, "unexpected character '<'");
      default:
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }
  }

  void punct(Token::Kind k, const char* s) {
    ++pos_;
    ++col_;
    tok_.kind = k;
    tok_.text = s;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
        ++col_;
        continue;
      }
      break;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

}  // namespace fodb
