#ifndef TREEFOL_PARSER_HPP
#define TREEFOL_PARSER_HPP

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treefol/formula.hpp"

namespace treefol {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
        line(l),
        col(c) {}
};

namespace detail {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Eqs, And, Or, Not, Implies, Iff, End };

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  Tok tok = Tok::End;
  std::string ident;
  int tok_line = 1, tok_col = 1;

  explicit Lexer(const std::string& s) : src(s) { next(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_line, tok_col); }

  void advance_char() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void next() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance_char();
    tok_line = line;
    tok_col = col;
    if (pos >= src.size()) {
      tok = Tok::End;
      return;
    }
    char c = src[pos];
    if (ident_char(c)) {
      ident.clear();
      while (pos < src.size() && ident_char(src[pos])) {
        ident += src[pos];
        advance_char();
      }
      tok = Tok::Ident;
      return;
    }
    advance_char();
    switch (c) {
      case '(': tok = Tok::LParen; return;
      case ')': tok = Tok::RParen; return;
      case ',': tok = Tok::Comma; return;
      case '.': tok = Tok::Dot; return;
      case '=': tok = Tok::Eqs; return;
      case '&': tok = Tok::And; return;
      case '|': tok = Tok::Or; return;
      case '~': tok = Tok::Not; return;
      case '-':
        if (pos < src.size() && src[pos] == '>') {
          advance_char();
          tok = Tok::Implies;
          return;
        }
        throw ParseError("unexpected '-'", tok_line, tok_col);
      case '<':
        if (pos + 1 < src.size() && src[pos] == '-' && src[pos + 1] == '>') {
          advance_char();
          advance_char();
          tok = Tok::Iff;
          return;
        }
        throw ParseError("unexpected '<'", tok_line, tok_col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", tok_line, tok_col);
    }
  }
};

// Identifiers bound by a quantifier resolve to the binder; other bare
// identifiers are free variables. Applied identifiers are function symbols,
// with the arity fixed by first use ("f()" introduces a constant).
struct Parser {
  Lexer lx;
  std::vector<std::pair<std::string, Variable>> scope;
  std::map<std::string, Variable> frees;
  std::map<std::string, FunctionSymbol> symbols;
  long key_counter = 0;

  explicit Parser(const std::string& s) : lx(s) {}

  Variable mint(const std::string& name) { return Variable(OrderKey(++key_counter), name); }

  static bool keyword(const std::string& s) {
    return s == "true" || s == "false" || s == "finite" || s == "ex" || s == "all";
  }

  Formula parse() {
    Formula f = parse_iff();
    if (lx.tok != Tok::End) lx.fail("trailing input");
    return f;
  }

  Formula parse_iff() {
    Formula a = parse_implies();
    if (lx.tok == Tok::Iff) {
      lx.next();
      return Formula::iff(std::move(a), parse_iff());
    }
    return a;
  }

  Formula parse_implies() {
    Formula a = parse_or();
    if (lx.tok == Tok::Implies) {
      lx.next();
      return Formula::implies(std::move(a), parse_implies());
    }
    return a;
  }

  Formula parse_or() {
    Formula a = parse_and();
    while (lx.tok == Tok::Or) {
      lx.next();
      a = Formula::disj(std::move(a), parse_and());
    }
    return a;
  }

  Formula parse_and() {
    Formula a = parse_unary();
    while (lx.tok == Tok::And) {
      lx.next();
      a = Formula::conj(std::move(a), parse_unary());
    }
    return a;
  }

  Formula parse_unary() {
    if (lx.tok == Tok::Not) {
      lx.next();
      return Formula::negate(parse_unary());
    }
    if (lx.tok == Tok::Ident && (lx.ident == "ex" || lx.ident == "all")) {
      bool exists = lx.ident == "ex";
      lx.next();
      std::vector<Variable> vars;
      while (true) {
        if (lx.tok != Tok::Ident || keyword(lx.ident)) lx.fail("expected variable name");
        Variable v = mint(lx.ident);
        vars.push_back(v);
        scope.emplace_back(lx.ident, v);
        lx.next();
        if (lx.tok == Tok::Comma) {
          lx.next();
          continue;
        }
        break;
      }
      if (lx.tok != Tok::Dot) lx.fail("expected '.' after quantified variables");
      lx.next();
      Formula body = parse_iff();  // scope extends maximally to the right
      scope.resize(scope.size() - vars.size());
      return exists ? Formula::exists(std::move(vars), std::move(body))
                    : Formula::forall(std::move(vars), std::move(body));
    }
    return parse_atom();
  }

  Formula parse_atom() {
    if (lx.tok == Tok::LParen) {
      lx.next();
      Formula f = parse_iff();
      expect(Tok::RParen, "expected ')'");
      return f;
    }
    if (lx.tok != Tok::Ident) lx.fail("expected formula");
    if (lx.ident == "true") {
      lx.next();
      return Formula::tru();
    }
    if (lx.ident == "false") {
      lx.next();
      return Formula::fls();
    }
    if (lx.ident == "finite") {
      lx.next();
      expect(Tok::LParen, "expected '(' after finite");
      Term t = parse_term();
      expect(Tok::RParen, "expected ')'");
      return Formula::finite(std::move(t));
    }
    Term l = parse_term();
    expect(Tok::Eqs, "expected '=' in atomic formula");
    Term r = parse_term();
    return Formula::eq(std::move(l), std::move(r));
  }

  Term parse_term() {
    if (lx.tok != Tok::Ident || keyword(lx.ident)) lx.fail("expected term");
    std::string name = lx.ident;
    int eline = lx.tok_line, ecol = lx.tok_col;
    lx.next();
    if (lx.tok == Tok::LParen) {
      lx.next();
      std::vector<Term> args;
      if (lx.tok != Tok::RParen) {
        args.push_back(parse_term());
        while (lx.tok == Tok::Comma) {
          lx.next();
          args.push_back(parse_term());
        }
      }
      expect(Tok::RParen, "expected ')'");
      if (frees.count(name))
        throw ParseError("identifier '" + name + "' used both as variable and function symbol",
                         eline, ecol);
      auto it = symbols.find(name);
      if (it == symbols.end()) {
        it = symbols.emplace(name, FunctionSymbol(name, args.size())).first;
      } else if (it->second.arity() != args.size()) {
        throw ParseError("arity conflict for symbol '" + name + "': declared " +
                             std::to_string(it->second.arity()) + ", used with " +
                             std::to_string(args.size()),
                         eline, ecol);
      }
      return Term(it->second, std::move(args));
    }
    // bare identifier: bound variable if in scope, else free variable
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return Term(it->second);
    if (symbols.count(name))
      throw ParseError("identifier '" + name + "' used both as function symbol and variable",
                       eline, ecol);
    auto it = frees.find(name);
    if (it == frees.end()) it = frees.emplace(name, mint(name)).first;
    return Term(it->second);
  }

  void expect(Tok t, const char* msg) {
    if (lx.tok != t) lx.fail(msg);
    lx.next();
  }
};

}  // namespace detail

inline Formula parse(const std::string& text) {
  detail::Parser p(text);
  return p.parse();
}

}  // namespace treefol

#endif
