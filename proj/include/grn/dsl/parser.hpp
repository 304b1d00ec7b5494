#ifndef GRN_DSL_PARSER_HPP
#define GRN_DSL_PARSER_HPP

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grn/dsl/ast.hpp"
#include "grn/dsl/lexer.hpp"

namespace grn::dsl {

namespace detail {

struct SyntaxError {
  Diagnostic diagnostic;
};

/// Shared LL(1) machinery: a token cursor plus expectation helpers that throw
/// SyntaxError carrying an E001 diagnostic.
class ParserBase {
 protected:
  ParserBase(std::string_view text, bool newlines_are_space)
      : tokens_(Lexer(text, newlines_are_space).tokenize()) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok t) const { return peek().kind == t; }

  Token take() {
    Token t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    last_span_ = t.span;
    return t;
  }

  bool accept(Tok t) {
    if (!at(t)) return false;
    take();
    return true;
  }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    std::string message = "expected ";
    std::size_t i = 0;
    for (Tok t : expected) {
      if (i > 0) message += i + 1 == expected.size() ? " or " : ", ";
      message += describe(t);
      ++i;
    }
    message += ", found " + found(peek());
    throw SyntaxError{make_error("E001", std::move(message), peek().span)};
  }

  [[noreturn]] void fail_at(std::string message, SourceSpan span) const {
    throw SyntaxError{make_error("E001", std::move(message), span)};
  }

  Token expect(Tok t) {
    if (!at(t)) fail({t});
    return take();
  }

  Name expect_name() {
    const Token& t = peek();
    if (t.kind != Tok::identifier) {
      if (is_keyword(t.text)) {
        fail_at("expected identifier, found reserved word '" + t.text + "'", t.span);
      }
      fail({Tok::identifier});
    }
    Token tok = take();
    return {tok.text, tok.span};
  }

  Number expect_number() {
    Token tok = expect(Tok::integer);
    if (tok.value < 0) fail_at("integer '" + tok.text + "' is too large", tok.span);
    return {tok.value, tok.span};
  }

  std::optional<Comparator> accept_comparator() {
    switch (peek().kind) {
      case Tok::ge: take(); return Comparator::ge;
      case Tok::le: take(); return Comparator::le;
      case Tok::eq: take(); return Comparator::eq;
      case Tok::gt: take(); return Comparator::gt;
      case Tok::lt: take(); return Comparator::lt;
      default: return std::nullopt;
    }
  }

  Comparator expect_comparator() {
    if (auto c = accept_comparator()) return *c;
    fail({Tok::ge, Tok::le, Tok::eq, Tok::gt, Tok::lt});
  }

  static std::string found(const Token& t) {
    switch (t.kind) {
      case Tok::end:
      case Tok::newline:
        return describe(t.kind);
      case Tok::invalid:
        return "invalid character '" + t.text + "'";
      default:
        return "'" + t.text + "'";
    }
  }

  SourceSpan span_from(SourceSpan start) const { return cover(start, last_span_); }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  SourceSpan last_span_;
  std::vector<Diagnostic> diagnostics_;
};

class NetworkParser : ParserBase {
 public:
  explicit NetworkParser(std::string_view text) : ParserBase(text, false) {}

  ParseResult<NetworkAst> run() {
    NetworkAst ast;
    skip_newlines();
    try {
      const SourceSpan start = peek().span;
      expect(Tok::kw_network);
      ast.name = expect_name();
      ast.span = span_from(start);
      end_declaration();
    } catch (const SyntaxError& e) {
      diagnostics_.push_back(e.diagnostic);
      recover();
    }
    while (true) {
      skip_newlines();
      if (at(Tok::end)) break;
      try {
        ast.decls.push_back(declaration());
        end_declaration();
      } catch (const SyntaxError& e) {
        diagnostics_.push_back(e.diagnostic);
        recover();
      }
    }
    ast.span = cover(ast.span, last_span_);
    ParseResult<NetworkAst> out;
    out.diagnostics = std::move(diagnostics_);
    if (!has_errors(out.diagnostics)) out.ast = std::move(ast);
    return out;
  }

 private:
  void skip_newlines() {
    while (accept(Tok::newline)) {
    }
  }

  void end_declaration() {
    if (at(Tok::end)) return;
    expect(Tok::newline);
  }

  void recover() {
    while (!at(Tok::newline) && !at(Tok::end)) take();
  }

  Decl declaration() {
    switch (peek().kind) {
      case Tok::kw_gene: return gene();
      case Tok::kw_rule: return rule();
      case Tok::kw_init: return init();
      case Tok::identifier: return edge();
      default:
        fail({Tok::kw_gene, Tok::kw_rule, Tok::kw_init, Tok::identifier});
    }
  }

  GeneDecl gene() {
    GeneDecl d;
    const SourceSpan start = take().span;
    d.name = expect_name();
    expect(Tok::kw_levels);
    const Number low = expect_number();
    if (low.value != 0) fail_at("level ranges start at 0", low.span);
    expect(Tok::dotdot);
    d.max_level = expect_number();
    if (d.max_level.value < 1) {
      fail_at("level range 0.." + std::to_string(d.max_level.value) +
                  " must have an upper bound of at least 1",
              cover(low.span, d.max_level.span));
    }
    d.span = span_from(start);
    return d;
  }

  EdgeDecl edge() {
    EdgeDecl d;
    d.source = expect_name();
    if (accept(Tok::arrow)) {
      d.sign = Sign::activator;
    } else if (accept(Tok::bar_arrow)) {
      d.sign = Sign::inhibitor;
    } else {
      fail({Tok::arrow, Tok::bar_arrow});
    }
    d.target = expect_name();
    expect(Tok::kw_threshold);
    d.threshold = expect_number();
    d.span = span_from(d.source.span);
    return d;
  }

  RuleDecl rule() {
    RuleDecl d;
    const SourceSpan start = take().span;
    d.gene = expect_name();
    expect(Tok::colon);
    if (at(Tok::kw_when)) {
      d.clauses.push_back(clause());
      while (accept(Tok::comma)) d.clauses.push_back(clause());
    }
    if (!at(Tok::kw_default)) {
      if (d.clauses.empty()) fail({Tok::kw_when, Tok::kw_default});
      fail({Tok::comma, Tok::kw_default});
    }
    take();
    d.default_level = expect_number();
    d.span = span_from(start);
    return d;
  }

  ClauseAst clause() {
    ClauseAst c;
    const SourceSpan start = expect(Tok::kw_when).span;
    c.when = condition();
    expect(Tok::arrow);
    c.target = expect_number();
    c.span = span_from(start);
    return c;
  }

  CondAst condition() {
    CondAst lhs = conjunction();
    while (accept(Tok::kw_or)) lhs = binary(CondAst::Kind::disjunction, std::move(lhs), conjunction());
    return lhs;
  }

  CondAst conjunction() {
    CondAst lhs = atom();
    while (accept(Tok::kw_and)) lhs = binary(CondAst::Kind::conjunction, std::move(lhs), atom());
    return lhs;
  }

  CondAst atom() {
    CondAst c;
    const SourceSpan start = peek().span;
    if (accept(Tok::kw_not)) {
      c.kind = CondAst::Kind::negation;
      c.operands.push_back(atom());
    } else if (accept(Tok::lparen)) {
      c.kind = CondAst::Kind::group;
      c.operands.push_back(condition());
      expect(Tok::rparen);
    } else if (at(Tok::identifier)) {
      c.gene = expect_name();
      c.cmp = expect_comparator();
      c.value = expect_number();
    } else {
      fail({Tok::identifier, Tok::kw_not, Tok::lparen});
    }
    c.span = span_from(start);
    return c;
  }

  static CondAst binary(CondAst::Kind kind, CondAst lhs, CondAst rhs) {
    CondAst c;
    c.kind = kind;
    c.span = cover(lhs.span, rhs.span);
    c.operands.push_back(std::move(lhs));
    c.operands.push_back(std::move(rhs));
    return c;
  }

  InitDecl init() {
    InitDecl d;
    const SourceSpan start = take().span;
    do {
      Assignment a;
      a.gene = expect_name();
      expect(Tok::eq);
      a.level = expect_number();
      a.span = span_from(a.gene.span);
      d.assignments.push_back(std::move(a));
    } while (accept(Tok::comma));
    d.span = span_from(start);
    return d;
  }
};

class QueryParser : ParserBase {
 public:
  explicit QueryParser(std::string_view text) : ParserBase(text, true) {}

  ParseResult<QueryAst> run_query() {
    return guarded([&] {
      QueryAst q;
      const SourceSpan start = peek().span;
      if (accept(Tok::kw_check)) {
        q.kind = QueryAst::Kind::check;
        q.formula = formula();
      } else if (accept(Tok::kw_stable)) {
        q.kind = QueryAst::Kind::stable;
        if (accept(Tok::kw_where)) q.formula = formula();
      } else if (accept(Tok::kw_count)) {
        q.kind = QueryAst::Kind::count_reachable;
        expect(Tok::kw_reachable);
      } else {
        fail({Tok::kw_check, Tok::kw_stable, Tok::kw_count});
      }
      q.span = span_from(start);
      return q;
    });
  }

  ParseResult<FormulaAst> run_formula() {
    return guarded([&] { return formula(); });
  }

 private:
  template <class Fn>
  auto guarded(Fn&& fn) -> ParseResult<decltype(fn())> {
    ParseResult<decltype(fn())> out;
    try {
      auto ast = fn();
      if (!at(Tok::end)) fail({Tok::kw_and, Tok::kw_or, Tok::end});
      out.ast = std::move(ast);
    } catch (const SyntaxError& e) {
      out.diagnostics.push_back(e.diagnostic);
    }
    return out;
  }

  FormulaAst formula() {
    FormulaAst lhs = fconj();
    while (accept(Tok::kw_or)) lhs = binary(FormulaAst::Kind::disjunction, std::move(lhs), fconj());
    return lhs;
  }

  FormulaAst fconj() {
    FormulaAst lhs = funit();
    while (accept(Tok::kw_and)) lhs = binary(FormulaAst::Kind::conjunction, std::move(lhs), funit());
    return lhs;
  }

  std::optional<Temporal> accept_temporal() {
    switch (peek().kind) {
      case Tok::kw_EX: take(); return Temporal::EX;
      case Tok::kw_EF: take(); return Temporal::EF;
      case Tok::kw_EG: take(); return Temporal::EG;
      case Tok::kw_AX: take(); return Temporal::AX;
      case Tok::kw_AF: take(); return Temporal::AF;
      case Tok::kw_AG: take(); return Temporal::AG;
      default: return std::nullopt;
    }
  }

  FormulaAst funit() {
    FormulaAst f;
    const SourceSpan start = peek().span;
    if (accept(Tok::kw_not)) {
      f.kind = FormulaAst::Kind::negation;
      f.operands.push_back(funit());
    } else if (auto op = accept_temporal()) {
      f.kind = FormulaAst::Kind::temporal;
      f.op = *op;
      f.operands.push_back(funit());
    } else if (accept(Tok::kw_deadlock)) {
      f.kind = FormulaAst::Kind::deadlock;
    } else if (accept(Tok::lparen)) {
      f.kind = FormulaAst::Kind::group;
      f.operands.push_back(formula());
      expect(Tok::rparen);
    } else if (at(Tok::identifier)) {
      f.gene = expect_name();
      f.cmp = expect_comparator();
      f.value = expect_number();
    } else {
      fail_at("expected identifier, 'deadlock', 'not', '(' or a temporal operator, found " +
                  found(peek()),
              peek().span);
    }
    f.span = span_from(start);
    return f;
  }

  static FormulaAst binary(FormulaAst::Kind kind, FormulaAst lhs, FormulaAst rhs) {
    FormulaAst f;
    f.kind = kind;
    f.span = cover(lhs.span, rhs.span);
    f.operands.push_back(std::move(lhs));
    f.operands.push_back(std::move(rhs));
    return f;
  }
};

}  // namespace detail

/// Parses a network description. Recovers at line boundaries so that every
/// malformed declaration gets its own E001 diagnostic.
inline ParseResult<NetworkAst> parse_network(std::string_view text) {
  return detail::NetworkParser(text).run();
}

/// Parses a full query: `check F`, `stable [where F]` or `count reachable`.
inline ParseResult<QueryAst> parse_query(std::string_view text) {
  return detail::QueryParser(text).run_query();
}

/// Parses a bare formula (used for `stable --where`).
inline ParseResult<FormulaAst> parse_formula(std::string_view text) {
  return detail::QueryParser(text).run_formula();
}

}  // namespace grn::dsl

#endif
