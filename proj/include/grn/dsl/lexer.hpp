#ifndef GRN_DSL_LEXER_HPP
#define GRN_DSL_LEXER_HPP

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grn/diagnostic.hpp"

namespace grn::dsl {

enum class Tok {
  end,
  newline,
  identifier,
  integer,
  // keywords
  kw_network, kw_gene, kw_levels, kw_threshold, kw_rule, kw_when, kw_default, kw_init,
  kw_not, kw_and, kw_or, kw_check, kw_stable, kw_where, kw_count, kw_reachable,
  kw_deadlock, kw_EX, kw_EF, kw_EG, kw_AX, kw_AF, kw_AG,
  // punctuation
  dotdot, arrow, bar_arrow, colon, comma, lparen, rparen, ge, le, eq, gt, lt,
  invalid,
};

inline constexpr std::array<std::pair<std::string_view, Tok>, 23> keywords{{
    {"network", Tok::kw_network}, {"gene", Tok::kw_gene},         {"levels", Tok::kw_levels},
    {"threshold", Tok::kw_threshold}, {"rule", Tok::kw_rule},     {"when", Tok::kw_when},
    {"default", Tok::kw_default}, {"init", Tok::kw_init},         {"not", Tok::kw_not},
    {"and", Tok::kw_and},         {"or", Tok::kw_or},             {"check", Tok::kw_check},
    {"stable", Tok::kw_stable},   {"where", Tok::kw_where},       {"count", Tok::kw_count},
    {"reachable", Tok::kw_reachable}, {"deadlock", Tok::kw_deadlock}, {"EX", Tok::kw_EX},
    {"EF", Tok::kw_EF},           {"EG", Tok::kw_EG},             {"AX", Tok::kw_AX},
    {"AF", Tok::kw_AF},           {"AG", Tok::kw_AG},
}};

inline bool is_keyword(std::string_view word) {
  for (const auto& [text, tok] : keywords) {
    if (text == word) return true;
  }
  return false;
}

inline std::string describe(Tok t) {
  switch (t) {
    case Tok::end: return "end of input";
    case Tok::newline: return "end of line";
    case Tok::identifier: return "identifier";
    case Tok::integer: return "integer";
    case Tok::dotdot: return "'..'";
    case Tok::arrow: return "'->'";
    case Tok::bar_arrow: return "'-|'";
    case Tok::colon: return "':'";
    case Tok::comma: return "','";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::ge: return "'>='";
    case Tok::le: return "'<='";
    case Tok::eq: return "'='";
    case Tok::gt: return "'>'";
    case Tok::lt: return "'<'";
    case Tok::invalid: return "invalid character";
    default: break;
  }
  for (const auto& [text, tok] : keywords) {
    if (tok == t) return "'" + std::string(text) + "'";
  }
  return "token";
}

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourceSpan span;
  long long value = 0;  // integers only
};

/// Splits source text into tokens. `#` starts a comment that runs to the end
/// of the line. Newlines are significant unless `newlines_are_space` is set
/// (the query language is line-insensitive).
class Lexer {
 public:
  explicit Lexer(std::string_view text, bool newlines_are_space = false)
      : text_(text), newlines_are_space_(newlines_are_space) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    while (true) {
      out.push_back(next());
      if (out.back().kind == Tok::end) break;
    }
    return out;
  }

 private:
  Token next() {
    skip_blank();
    Token tok;
    tok.span = {line_, column_, 0};
    if (pos_ >= text_.size()) return tok;

    const char c = text_[pos_];
    if (c == '\n') {
      advance(1);
      tok.kind = Tok::newline;
      tok.span.length = 0;
      tok.text = "\n";
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      tok.text = std::string(text_.substr(pos_, end - pos_));
      tok.kind = Tok::identifier;
      for (const auto& [word, kw] : keywords) {
        if (word == tok.text) tok.kind = kw;
      }
      return finish(tok, end - pos_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      tok.text = std::string(text_.substr(pos_, end - pos_));
      tok.kind = Tok::integer;
      if (tok.text.size() > 9) {
        tok.value = -1;  // too large; the parser reports it
      } else {
        tok.value = std::stoll(tok.text);
      }
      return finish(tok, end - pos_);
    }

    const auto two = text_.substr(pos_, 2);
    if (two == "..") return punct(tok, Tok::dotdot, 2);
    if (two == "->") return punct(tok, Tok::arrow, 2);
    if (two == "-|") return punct(tok, Tok::bar_arrow, 2);
    if (two == ">=") return punct(tok, Tok::ge, 2);
    if (two == "<=") return punct(tok, Tok::le, 2);
    switch (c) {
      case ':': return punct(tok, Tok::colon, 1);
      case ',': return punct(tok, Tok::comma, 1);
      case '(': return punct(tok, Tok::lparen, 1);
      case ')': return punct(tok, Tok::rparen, 1);
      case '=': return punct(tok, Tok::eq, 1);
      case '>': return punct(tok, Tok::gt, 1);
      case '<': return punct(tok, Tok::lt, 1);
      default: break;
    }
    return punct(tok, Tok::invalid, 1);
  }

  Token punct(Token& tok, Tok kind, std::size_t len) {
    tok.kind = kind;
    tok.text = std::string(text_.substr(pos_, len));
    return finish(tok, len);
  }

  Token finish(Token& tok, std::size_t len) {
    tok.span.length = static_cast<int>(len);
    advance(len);
    return std::move(tok);
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (c == ' ' || c == '\t' || c == '\r' || (c == '\n' && newlines_are_space_)) {
        advance(1);
      } else {
        break;
      }
    }
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  std::string_view text_;
  bool newlines_are_space_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace grn::dsl

#endif
